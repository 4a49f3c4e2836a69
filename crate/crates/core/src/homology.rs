//! Homology of chain complexes over ℤ, ℚ, F_p and F[t^{±1}].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::linalg::{rank_mod_p, rank_over_q, SparseVec};
use crate::algebra::poly::{format_poly, Polys};
use crate::algebra::ring::{EuclideanRing, Field, Integers, PrimeField, Rationals};
use crate::algebra::scalar::ScalarRing;
use crate::algebra::snf::{snf, snf_with_transforms};
use crate::algebra::sparse::SparseMatrix;
use crate::complexes::ChainComplex;
use crate::error::{Error, Result};

/// A torsion invariant factor: a positive integer, or a monic polynomial in
/// `t` (coefficients constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TorsionFactor {
    Int(BigInt),
    Poly(Vec<BigRational>),
}

impl TorsionFactor {
    pub fn int(n: i64) -> Self {
        TorsionFactor::Int(BigInt::from(n))
    }

    /// A polynomial factor from integer coefficients.
    pub fn poly(coeffs: &[i64]) -> Self {
        TorsionFactor::Poly(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Serialized form: the decimal integer, or the coefficient list.
    pub fn serialized(&self) -> String {
        match self {
            TorsionFactor::Int(n) => n.to_string(),
            TorsionFactor::Poly(c) => {
                let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("[{}]", inner.join(","))
            }
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            TorsionFactor::Int(n) => Some(n),
            TorsionFactor::Poly(_) => None,
        }
    }
}

impl fmt::Display for TorsionFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionFactor::Int(n) => write!(f, "{n}"),
            TorsionFactor::Poly(c) => write!(f, "{}", format_poly(c.iter().map(ToString::to_string).collect())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub degree: usize,
    pub betti: usize,
    /// Non-unit invariant factors in divisibility order.
    pub torsion: Vec<TorsionFactor>,
    /// Representing cycles: torsion generators first (matching `torsion`),
    /// then free generators.
    pub basis: Option<Vec<SparseVec<BigInt>>>,
}

impl HomologyResult {
    pub fn zero(degree: usize) -> Self {
        HomologyResult { degree, betti: 0, torsion: Vec::new(), basis: None }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Torsion grouped as `(factor, multiplicity)`, in divisibility order.
    pub fn torsion_multiplicities(&self) -> Vec<(TorsionFactor, usize)> {
        let mut out: Vec<(TorsionFactor, usize)> = Vec::new();
        for t in &self.torsion {
            match out.last_mut() {
                Some((f, m)) if f == t => *m += 1,
                _ => out.push((t.clone(), 1)),
            }
        }
        out
    }

    /// Number of integer factors divisible by `p`.
    pub fn torsion_count_divisible_by(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|t| t.as_int().is_some_and(|n| (n % &p).is_zero())).count()
    }
}

/// Renders a group as `Z^2 + Z/2 + Z/6`, or `0`.
impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for (t, m) in self.torsion_multiplicities() {
            let base = match &t {
                TorsionFactor::Int(n) => format!("Z/{n}"),
                TorsionFactor::Poly(_) => format!("R/({t})"),
            };
            parts.push(if m == 1 { base } else { format!("({base})^{m}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HomologyOptions {
    /// Rank over ℚ by exact rational elimination instead of modular ranks.
    pub exact: bool,
    /// Compute representing cycles (integral complexes only).
    pub with_basis: bool,
}

/// Rank and non-unit invariant factors of one boundary matrix.
#[derive(Clone, Debug, Default)]
struct BoundaryData {
    rank: usize,
    torsion: Vec<TorsionFactor>,
}

fn boundary_data(m: &SparseMatrix<BigInt>, ring: &ScalarRing, exact: bool) -> Result<BoundaryData> {
    if m.is_zero() {
        return Ok(BoundaryData::default());
    }
    match ring {
        ScalarRing::Integers => {
            let r = snf(&Integers, m);
            let torsion = r.nonunit_factors(&Integers).into_iter().map(TorsionFactor::Int).collect();
            Ok(BoundaryData { rank: r.rank, torsion })
        }
        ScalarRing::Rationals => Ok(BoundaryData { rank: rank_over_q(m, exact), torsion: Vec::new() }),
        ScalarRing::PrimeField(p) => Ok(BoundaryData { rank: rank_mod_p(m, *p), torsion: Vec::new() }),
        other => Err(Error::UnsupportedRing(format!("homology of an integral complex over {other}"))),
    }
}

/// `H_i` of an integral complex tensored with `ring` (ℤ, ℚ or F_p).
pub fn homology(c: &ChainComplex<BigInt>, ring: &ScalarRing, i: usize, opts: HomologyOptions) -> Result<HomologyResult> {
    ring.validate()?;
    if i >= c.num_degrees() {
        return Ok(HomologyResult::zero(i));
    }
    let out = boundary_data(&c.boundary(i as isize), ring, opts.exact)?;
    let inc = boundary_data(&c.boundary(i as isize + 1), ring, opts.exact)?;
    let mut r = HomologyResult {
        degree: i,
        betti: c.dim(i as isize) - out.rank - inc.rank,
        torsion: inc.torsion,
        basis: None,
    };
    if opts.with_basis {
        if *ring != ScalarRing::Integers {
            return Err(Error::Unsupported("bases are computed for integral homology only".into()));
        }
        let b = integral_basis(c, i);
        r.basis = Some(b.torsion.into_iter().map(|(_, v)| v).chain(b.free).collect());
    }
    Ok(r)
}

/// All degrees at once, factoring each boundary only once.
pub fn homology_all(c: &ChainComplex<BigInt>, ring: &ScalarRing, opts: HomologyOptions) -> Result<Vec<HomologyResult>> {
    ring.validate()?;
    let n = c.num_degrees();
    let data: Vec<BoundaryData> = (0..=n)
        .into_par_iter()
        .map(|i| boundary_data(&c.boundary(i as isize), ring, opts.exact))
        .collect::<Result<_>>()?;
    (0..n)
        .map(|i| {
            let mut r = HomologyResult {
                degree: i,
                betti: c.dim(i as isize) - data[i].rank - data[i + 1].rank,
                torsion: data[i + 1].torsion.clone(),
                basis: None,
            };
            if opts.with_basis {
                if *ring != ScalarRing::Integers {
                    return Err(Error::Unsupported("bases are computed for integral homology only".into()));
                }
                let b = integral_basis(c, i);
                r.basis = Some(b.torsion.into_iter().map(|(_, v)| v).chain(b.free).collect());
            }
            Ok(r)
        })
        .collect()
}

/// Representing cycles of integral homology.
#[derive(Clone, Debug)]
pub struct IntegralBasis {
    /// `(order, cycle)` for each torsion summand.
    pub torsion: Vec<(BigInt, SparseVec<BigInt>)>,
    pub free: Vec<SparseVec<BigInt>>,
}

/// Two-step Smith normal form: a kernel basis of `∂_i` from the column
/// transform of `SNF(∂_i)`, then `SNF` of `∂_{i+1}` written in that basis.
/// Dense; meant for small complexes.
pub fn integral_basis(c: &ChainComplex<BigInt>, i: usize) -> IntegralBasis {
    let z = Integers;
    let dim = c.dim(i as isize);
    let out = snf_with_transforms(&z, &c.boundary(i as isize));
    let r = out.rank;
    // Kernel basis: columns r.. of V. Coordinates: rows r.. of V^{-1}.
    let v_inv = SparseMatrix::from_dense(&z, &out.v_inv, dim);
    let coords = v_inv.mul(&z, &c.boundary(i as isize + 1));
    let kept: Vec<usize> = (r..dim).collect();
    let all_cols: Vec<usize> = (0..coords.cols()).collect();
    debug_assert!(coords.submatrix(&(0..r).collect::<Vec<_>>(), &all_cols).is_zero());
    let m = coords.submatrix(&kept, &all_cols);
    let inner = snf_with_transforms(&z, &m);
    // Generators: K · U^{-1}, K = V[:, r..].
    let k = dim - r;
    let gens: Vec<SparseVec<BigInt>> = (0..k)
        .map(|j| {
            let mut v: Vec<BigInt> = vec![BigInt::zero(); dim];
            for (a, row) in inner.u_inv.iter().enumerate() {
                let w = &row[j];
                if w.is_zero() {
                    continue;
                }
                for (x, vx) in v.iter_mut().enumerate() {
                    *vx += &out.v[x][r + a] * w;
                }
            }
            v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
        })
        .collect();
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for (j, g) in gens.into_iter().enumerate() {
        match inner.diagonal.get(j) {
            Some(d) if !d.is_zero() => {
                if !d.is_one() {
                    torsion.push((d.clone(), g));
                }
            }
            _ => free.push(g),
        }
    }
    IntegralBasis { torsion, free }
}

/// Coefficients of field elements as rationals (F_p residues as integers).
pub trait AsRational: Field {
    fn as_rational(&self, a: &Self::Elem) -> BigRational;
}

impl AsRational for PrimeField {
    fn as_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

impl AsRational for Rationals {
    fn as_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

fn laurent_data<F: AsRational + EuclideanRing>(
    field: &F,
    m: &SparseMatrix<Vec<BigInt>>,
) -> (usize, Vec<TorsionFactor>) {
    let px = Polys::new(field.clone());
    let zt = Polys::new(Integers);
    let mp = m.map(&px, |p| zt.map_coeffs(&px, p, |c| field.from_integer(c)));
    let r = snf(&px, &mp);
    let torsion = r
        .invariant_factors
        .iter()
        .filter_map(|f| {
            let (_, g) = px.strip_t_power(f);
            let g = px.normalize(&g).1;
            (!px.is_unit(&g)).then(|| TorsionFactor::Poly(g.iter().map(|c| field.as_rational(c)).collect()))
        })
        .collect();
    (r.rank, torsion)
}

/// `H_i` of a complex over `F[t^{±1}]`, `F` = ℚ or F_p. Torsion factors are
/// monic with powers of `t` removed.
pub fn homology_over_laurent(c: &ChainComplex<Vec<BigInt>>, field: &ScalarRing, i: usize) -> Result<HomologyResult> {
    field.validate()?;
    if i >= c.num_degrees() {
        return Ok(HomologyResult::zero(i));
    }
    let run = |m: &SparseMatrix<Vec<BigInt>>| -> Result<(usize, Vec<TorsionFactor>)> {
        Ok(match field {
            ScalarRing::Rationals => laurent_data(&Rationals, m),
            ScalarRing::PrimeField(p) => laurent_data(&PrimeField::new(*p), m),
            other => return Err(Error::UnsupportedRing(format!("Laurent homology needs a field base, got {other}"))),
        })
    };
    let (r_out, _) = run(&c.boundary(i as isize))?;
    let (r_in, torsion) = run(&c.boundary(i as isize + 1))?;
    Ok(HomologyResult { degree: i, betti: c.dim(i as isize) - r_out - r_in, torsion, basis: None })
}

pub fn homology_over_laurent_all(c: &ChainComplex<Vec<BigInt>>, field: &ScalarRing) -> Result<Vec<HomologyResult>> {
    (0..c.num_degrees()).into_par_iter().map(|i| homology_over_laurent(c, field, i)).collect()
}

/// Universal-coefficient consistency between integral and field results.
#[derive(Clone, Debug, Default)]
pub struct UctReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl UctReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `dim_{F_p} H_i = b_i + t_i(p) + t_{i-1}(p)` for every `p` given and
/// `dim_ℚ H_i = b_i`. `integral[i]` must be `H_i` over ℤ.
pub fn uct_check(
    integral: &[HomologyResult],
    mod_p: &[(u64, Vec<HomologyResult>)],
    rational: Option<&[HomologyResult]>,
) -> UctReport {
    let mut report = UctReport::default();
    for (p, res) in mod_p {
        for (i, h) in res.iter().enumerate() {
            let betti = integral.get(i).map_or(0, |r| r.betti);
            let t_i = integral.get(i).map_or(0, |r| r.torsion_count_divisible_by(*p));
            let t_prev = if i == 0 { 0 } else { integral.get(i - 1).map_or(0, |r| r.torsion_count_divisible_by(*p)) };
            report.checked += 1;
            if h.betti != betti + t_i + t_prev {
                report.violations.push(format!(
                    "F_{p}, degree {i}: dim {} but betti {betti} + t_i {t_i} + t_(i-1) {t_prev}",
                    h.betti
                ));
            }
        }
    }
    if let Some(q) = rational {
        for (i, h) in q.iter().enumerate() {
            report.checked += 1;
            let betti = integral.get(i).map_or(0, |r| r.betti);
            if h.betti != betti {
                report.violations.push(format!("Q, degree {i}: dim {} but integral betti {betti}", h.betti));
            }
        }
    }
    report
}
