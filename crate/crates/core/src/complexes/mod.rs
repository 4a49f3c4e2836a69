//! Chain complexes of type-A and type-B Artin groups.

mod build;
mod cell;
mod coeff;
pub mod triplet;

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

pub use build::{boundary_a, boundary_b, build, build_a, build_b_integral, build_b_laurent, MAX_BUILD_LEN};
pub use cell::{enumerate, graded_cmp, CellString};
pub use coeff::{CoefficientSpec, Module};

use crate::algebra::ring::Ring;
use crate::algebra::sparse::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            _ => Err(Error::Parse(format!("unknown family '{s}' (expected A or B)"))),
        }
    }
}

/// Which summand of a mapping cone a basis element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The shifted source.
    Source,
    /// The target.
    Target,
}

/// Names a basis element of a chain module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Cell(CellString),
    /// `cell ⊗ 1` (`false`) or `cell ⊗ t` (`true`) in `R[t]/(1 - t^2)`.
    Twisted(CellString, bool),
    Cone(Side, Box<Label>),
}

impl Label {
    pub fn cell(&self) -> Option<CellString> {
        match self {
            Label::Cell(c) | Label::Twisted(c, _) => Some(*c),
            Label::Cone(_, inner) => inner.cell(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Cell(c) => write!(f, "{c}"),
            Label::Twisted(c, false) => write!(f, "{c}@1"),
            Label::Twisted(c, true) => write!(f, "{c}@t"),
            Label::Cone(Side::Source, l) => write!(f, "s:{l}"),
            Label::Cone(Side::Target, l) => write!(f, "t:{l}"),
        }
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("s:") {
            return Ok(Label::Cone(Side::Source, Box::new(rest.parse()?)));
        }
        if let Some(rest) = s.strip_prefix("t:") {
            return Ok(Label::Cone(Side::Target, Box::new(rest.parse()?)));
        }
        if let Some(c) = s.strip_suffix("@1") {
            return Ok(Label::Twisted(c.parse()?, false));
        }
        if let Some(c) = s.strip_suffix("@t") {
            return Ok(Label::Twisted(c.parse()?, true));
        }
        Ok(Label::Cell(s.parse()?))
    }
}

/// Graded free modules with boundary matrices `∂_i : C_i → C_{i-1}`.
///
/// Degrees run from 0 to `top_degree()`; outside that range the modules are
/// zero.
#[derive(Clone, Debug)]
pub struct ChainComplex<T> {
    name: String,
    labels: Vec<Vec<Label>>,
    index: Vec<HashMap<Label, usize>>,
    boundaries: Vec<SparseMatrix<T>>,
}

impl<T: Clone + PartialEq> ChainComplex<T> {
    /// `boundaries[i]` must be `dim C_{i-1} × dim C_i`; `boundaries[0]` is
    /// ignored and replaced by the zero map.
    pub fn new(name: impl Into<String>, labels: Vec<Vec<Label>>, mut boundaries: Vec<SparseMatrix<T>>) -> Self {
        assert_eq!(labels.len(), boundaries.len(), "one boundary per degree");
        for i in 0..labels.len() {
            let rows = if i == 0 { 0 } else { labels[i - 1].len() };
            if i == 0 {
                boundaries[0] = SparseMatrix::zero(0, labels[0].len());
            }
            assert_eq!(
                (boundaries[i].rows(), boundaries[i].cols()),
                (rows, labels[i].len()),
                "boundary in degree {i} has the wrong shape"
            );
        }
        let index = labels
            .iter()
            .map(|ls| ls.iter().enumerate().map(|(k, l)| (l.clone(), k)).collect())
            .collect();
        ChainComplex { name: name.into(), labels, index, boundaries }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of stored degrees (`top_degree() + 1`).
    pub fn num_degrees(&self) -> usize {
        self.labels.len()
    }

    pub fn top_degree(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    pub fn dim(&self, i: isize) -> usize {
        if i < 0 {
            return 0;
        }
        self.labels.get(i as usize).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, i: isize) -> &[Label] {
        if i < 0 {
            return &[];
        }
        self.labels.get(i as usize).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, i: isize, label: &Label) -> Option<usize> {
        if i < 0 {
            return None;
        }
        self.index.get(i as usize)?.get(label).copied()
    }

    /// `∂_i`, with zero matrices of the right shape outside the stored range.
    pub fn boundary(&self, i: isize) -> Cow<'_, SparseMatrix<T>> {
        if i >= 1 && (i as usize) < self.boundaries.len() {
            Cow::Borrowed(&self.boundaries[i as usize])
        } else {
            Cow::Owned(SparseMatrix::zero(self.dim(i - 1), self.dim(i)))
        }
    }

    /// Σ (-1)^i dim C_i.
    pub fn euler_characteristic(&self) -> i64 {
        self.labels.iter().enumerate().map(|(i, l)| if i % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Applies a ring map to every boundary entry.
    pub fn map_scalars<S: Ring>(&self, target: &S, f: impl Fn(&T) -> S::Elem) -> ChainComplex<S::Elem> {
        let boundaries = self.boundaries.iter().map(|b| b.map(target, &f)).collect();
        ChainComplex {
            name: self.name.clone(),
            labels: self.labels.clone(),
            index: self.index.clone(),
            boundaries,
        }
    }

    /// Checks `∂_{i-1} ∘ ∂_i = 0` in every degree; on failure returns the
    /// degree and a cell whose image under `∂∂` is nonzero.
    pub fn check_d_squared<R: Ring<Elem = T>>(&self, ring: &R) -> std::result::Result<(), (usize, Label)> {
        for i in 2..self.boundaries.len() {
            let dd = self.boundaries[i - 1].mul(ring, &self.boundaries[i]);
            if let Some(j) = (0..dd.cols()).find(|&j| !dd.column(j).is_empty()) {
                return Err((i, self.labels[i][j].clone()));
            }
        }
        Ok(())
    }
}

/// A built complex: integral scalars, or polynomials in `t` for the Laurent
/// module.
#[derive(Clone, Debug)]
pub enum Complex {
    Integral(ChainComplex<BigInt>),
    Laurent(ChainComplex<Vec<BigInt>>),
}

impl Complex {
    pub fn name(&self) -> &str {
        match self {
            Complex::Integral(c) => c.name(),
            Complex::Laurent(c) => c.name(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            Complex::Integral(c) => c.dims(),
            Complex::Laurent(c) => c.dims(),
        }
    }

    pub fn check_d_squared(&self) -> std::result::Result<(), (usize, Label)> {
        match self {
            Complex::Integral(c) => c.check_d_squared(&crate::algebra::Integers),
            Complex::Laurent(c) => c.check_d_squared(&crate::algebra::Polys::new(crate::algebra::Integers)),
        }
    }

    pub fn as_integral(&self) -> Option<&ChainComplex<BigInt>> {
        match self {
            Complex::Integral(c) => Some(c),
            Complex::Laurent(_) => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&ChainComplex<Vec<BigInt>>> {
        match self {
            Complex::Laurent(c) => Some(c),
            Complex::Integral(_) => None,
        }
    }
}
