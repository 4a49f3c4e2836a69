//! Exact scalar rings, sparse matrices and Smith normal form.

pub mod linalg;
pub mod modular;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod snf;
pub mod sparse;

pub use poly::Polys;
pub use ring::{EuclideanRing, Field, Integers, PrimeField, Rationals, Ring};
pub use snf::{rank, snf, snf_with_transforms, SnfResult, SnfTransforms};
pub use sparse::SparseMatrix;
