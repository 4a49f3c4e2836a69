//! Exact homology of type-A and type-B Artin groups with abelian local
//! coefficients, and of braid groups with coefficients in the first homology
//! of the hyperelliptic curves `Σ_n`.

pub mod algebra;
pub mod assembler;
pub mod bench;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod homology;
pub mod maps;
pub mod qcalc;
pub mod record;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
