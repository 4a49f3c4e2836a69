//! Sparse triplet text format for complexes.
//!
//! ```text
//! # artin-homology triplets v1
//! # name: B(1, laurent)
//! #cells	0	0|
//! #cells	1	1|
//! 1	0|	1|	[1,1]
//! ```
//!
//! `#cells` lines list the basis of each degree in order. Data lines are
//! `degree, row label, column label, scalar`, tab separated, for the entries
//! of `∂_degree`. Integer scalars are decimal; polynomial scalars are
//! coefficient lists, constant term first.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::{ChainComplex, Label};
use crate::algebra::poly::Polys;
use crate::algebra::ring::{Integers, Ring};
use crate::algebra::sparse::SparseMatrix;
use crate::error::{Error, Result};

pub const HEADER: &str = "# artin-homology triplets v1";

/// Scalars that can appear in the triplet format.
pub trait TripletScalar: Sized + Clone + PartialEq {
    type R: Ring<Elem = Self>;
    fn ring() -> Self::R;
    fn write(&self) -> String;
    fn parse(s: &str) -> Result<Self>;
}

impl TripletScalar for BigInt {
    type R = Integers;
    fn ring() -> Integers {
        Integers
    }
    fn write(&self) -> String {
        self.to_string()
    }
    fn parse(s: &str) -> Result<Self> {
        s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'")))
    }
}

impl TripletScalar for Vec<BigInt> {
    type R = Polys<Integers>;
    fn ring() -> Polys<Integers> {
        Polys::new(Integers)
    }
    fn write(&self) -> String {
        let inner: Vec<String> = self.iter().map(ToString::to_string).collect();
        format!("[{}]", inner.join(","))
    }
    fn parse(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad polynomial '{s}'")))?;
        if inner.is_empty() {
            return Ok(Vec::new());
        }
        let coeffs = inner
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::ring().trim(coeffs))
    }
}

/// Writes the data lines of one matrix, `f : C_i → D_{i+shift}`.
pub fn write_matrix_lines<T: TripletScalar>(
    out: &mut String,
    degree: isize,
    rows: &[Label],
    cols: &[Label],
    m: &SparseMatrix<T>,
) {
    for (j, col) in m.columns().iter().enumerate() {
        for (i, v) in col {
            let _ = writeln!(out, "{degree}\t{}\t{}\t{}", rows[*i], cols[j], v.write());
        }
    }
}

pub fn write_complex<T: TripletScalar>(c: &ChainComplex<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "# name: {}", c.name());
    for i in 0..c.num_degrees() {
        let labels: Vec<String> = c.labels(i as isize).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "#cells\t{i}\t{}", labels.join("\t"));
    }
    for i in 1..c.num_degrees() as isize {
        write_matrix_lines(&mut out, i, c.labels(i - 1), c.labels(i), &c.boundary(i));
    }
    out
}

pub fn read_complex<T: TripletScalar>(text: &str) -> Result<ChainComplex<T>> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(Error::Parse("missing triplet header".into()));
    }
    let mut name = String::new();
    let mut labels: Vec<Vec<Label>> = Vec::new();
    let mut entries: Vec<(usize, Label, Label, T)> = Vec::new();
    for line in lines {
        if let Some(n) = line.strip_prefix("# name: ") {
            name = n.to_string();
        } else if let Some(rest) = line.strip_prefix("#cells\t") {
            let mut fields = rest.split('\t');
            let deg: usize = fields
                .next()
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad cells line '{line}'")))?;
            if deg != labels.len() {
                return Err(Error::Parse(format!("cells for degree {deg} out of order")));
            }
            labels.push(fields.filter(|f| !f.is_empty()).map(str::parse).collect::<Result<Vec<Label>>>()?);
        } else if line.starts_with('#') || line.trim().is_empty() {
            continue;
        } else {
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("expected 4 fields in '{line}'")));
            }
            let deg: usize = f[0].parse().map_err(|_| Error::Parse(format!("bad degree in '{line}'")))?;
            entries.push((deg, f[1].parse()?, f[2].parse()?, T::parse(f[3])?));
        }
    }
    let ring = T::ring();
    let mut triplets: Vec<Vec<(usize, usize, T)>> = vec![Vec::new(); labels.len()];
    let find = |deg: usize, l: &Label| -> Result<usize> {
        labels
            .get(deg)
            .and_then(|ls| ls.iter().position(|x| x == l))
            .ok_or_else(|| Error::Parse(format!("unknown label {l} in degree {deg}")))
    };
    for (deg, row, col, v) in entries {
        if deg == 0 || deg >= labels.len() {
            return Err(Error::Parse(format!("entry in degree {deg} outside the complex")));
        }
        triplets[deg].push((find(deg - 1, &row)?, find(deg, &col)?, v));
    }
    let boundaries = triplets
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let rows = if i == 0 { 0 } else { labels[i - 1].len() };
            SparseMatrix::from_triplets(&ring, rows, labels[i].len(), t)
        })
        .collect();
    Ok(ChainComplex::new(name, labels, boundaries))
}
