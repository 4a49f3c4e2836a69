use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cell::{enumerate, CellString};
use super::coeff::Module;
use super::{ChainComplex, Complex, Family, Label};
use crate::algebra::poly::Polys;
use crate::algebra::ring::{Integers, Ring};
use crate::algebra::scalar::{restrict_scalars, SplitQuotient};
use crate::algebra::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::qcalc::BoundaryCoefficients;

/// Longest strings the builders accept (`2^len` cells per family).
pub const MAX_BUILD_LEN: usize = 22;

fn coefficients(len: usize) -> BoundaryCoefficients {
    BoundaryCoefficients::new(len as u32 + 1)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn clear_bit(x: &CellString, pos: usize) -> CellString {
    CellString::new(x.bits() & !(1u64 << (x.len() - 1 - pos)), x.len(), x.is_marked())
}

/// Block starts and lengths of `B_1 0 B_2 0 … 0 B_k`.
fn block_spans(x: &CellString) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for len in x.blocks() {
        out.push((start, len));
        start += len + 1;
    }
    out
}

/// Type-A terms of the blocks after the first `skip` blocks, with the
/// Leibniz sign of the preceding ones.
fn a_terms(x: &CellString, coeffs: &BoundaryCoefficients, skip: usize) -> Vec<(CellString, BigInt)> {
    let mut out = Vec::new();
    let mut before = 0;
    for (j, (start, l)) in block_spans(x).into_iter().enumerate() {
        if j >= skip {
            for h in 0..l {
                let g = coeffs.gauss(l + 1, h + 1);
                if g.is_zero() {
                    continue;
                }
                let c = g * sign(before + h);
                out.push((clear_bit(x, start + h), c));
            }
        }
        before += l;
    }
    out
}

/// `∂x` in the type-A complex, where `∂1^l = Σ_{h<l} (-1)^h [l+1, h+1] 1^h 0 1^{l-h-1}`
/// with Gaussian binomials at `q = -1`, extended by the Leibniz rule.
pub fn boundary_a(x: &CellString) -> Vec<(CellString, BigInt)> {
    a_terms(x, &coefficients(x.len()), 0)
}

fn boundary_a_with(x: &CellString, coeffs: &BoundaryCoefficients) -> Vec<(CellString, BigInt)> {
    a_terms(x, coeffs, 0)
}

/// `∂̃x` in the type-B complex with Laurent coefficients, entries being
/// polynomials in `t` (constant term first).
pub fn boundary_b(x: &CellString) -> Vec<(CellString, Vec<BigInt>)> {
    boundary_b_with(x, &coefficients(x.len()))
}

fn boundary_b_with(x: &CellString, coeffs: &BoundaryCoefficients) -> Vec<(CellString, Vec<BigInt>)> {
    assert!(x.is_marked(), "type-B cells carry a mark");
    let l = x.blocks()[0];
    let mut out: Vec<(CellString, Vec<BigInt>)> = Vec::new();
    for h in 0..l {
        let p = coeffs.primed(l, h);
        if p.is_empty() {
            continue;
        }
        let s = BigInt::from(sign(h));
        out.push((clear_bit(x, h), p.iter().map(|c| c * &s).collect()));
    }
    out.extend(a_terms(x, coeffs, 1).into_iter().map(|(c, v)| (c, vec![v])));
    out
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_BUILD_LEN {
        return Err(Error::InvalidN { n, reason: "strings this long are beyond the builder's limit" });
    }
    Ok(())
}

fn assemble<T: Clone + PartialEq, R: Ring<Elem = T>>(
    ring: &R,
    name: String,
    len: usize,
    marked: bool,
    terms: impl Fn(&CellString) -> Vec<(CellString, T)>,
) -> ChainComplex<T> {
    let cells: Vec<Vec<CellString>> = (0..=len).map(|i| enumerate(len, i, marked)).collect();
    let mut boundaries = vec![SparseMatrix::zero(0, cells[0].len())];
    for i in 1..=len {
        let row_of = |c: &CellString| cells[i - 1].binary_search(c).expect("boundary stays in the complex");
        let triplets = cells[i]
            .iter()
            .enumerate()
            .flat_map(|(j, x)| terms(x).into_iter().map(move |(y, v)| (y, j, v)))
            .map(|(y, j, v)| (row_of(&y), j, v))
            .collect::<Vec<_>>();
        boundaries.push(SparseMatrix::from_triplets(ring, cells[i - 1].len(), cells[i].len(), triplets));
    }
    let labels = cells.into_iter().map(|cs| cs.into_iter().map(Label::Cell).collect()).collect();
    let complex = ChainComplex::new(name, labels, boundaries);
    debug_assert!(complex.check_d_squared(ring).is_ok(), "d^2 != 0 in {}", complex.name());
    complex
}

/// The type-A complex on strings of length `n` (computing the homology of
/// `Br_{n+1}`) with trivial integral coefficients.
pub fn build_a(n: usize) -> Result<ChainComplex<BigInt>> {
    check_len(n)?;
    let coeffs = coefficients(n);
    Ok(assemble(&Integers, format!("A({n})"), n, false, |x| boundary_a_with(x, &coeffs)))
}

/// The type-B complex on marked strings of length `n` over `ℤ[t]`.
pub fn build_b_laurent(n: usize) -> Result<ChainComplex<Vec<BigInt>>> {
    check_len(n)?;
    if n == 0 {
        return Err(Error::InvalidN { n, reason: "type B needs n >= 1" });
    }
    let coeffs = coefficients(n);
    let zt = Polys::new(Integers);
    Ok(assemble(&zt, format!("B({n}, laurent)"), n, true, |x| boundary_b_with(x, &coeffs)))
}

/// The type-B complex with one of the quotient modules, materialized over
/// ℤ. `Trivial` coincides with `Mod1PlusT` (`t = -1`, so `-t` acts as 1).
/// `Mod1MinusT2` uses the basis `{x ⊗ 1, x ⊗ t}` per cell.
pub fn build_b_integral(n: usize, module: Module) -> Result<ChainComplex<BigInt>> {
    let laurent = build_b_laurent(n)?;
    let z = Integers;
    let zt = Polys::new(Integers);
    let name = format!("B({n}, {module})");
    let c = match module {
        Module::Laurent => {
            return Err(Error::UnsupportedCoefficients("the Laurent module has no integral form".into()))
        }
        Module::Trivial | Module::Mod1PlusT => laurent.map_scalars(&z, |p| zt.eval(p, &BigInt::from(-1))),
        Module::Mod1MinusT => laurent.map_scalars(&z, |p| zt.eval(p, &BigInt::one())),
        Module::Mod1MinusT2 => {
            let q = SplitQuotient::new(Integers);
            let labels: Vec<Vec<Label>> = (0..=n)
                .map(|i| {
                    laurent
                        .labels(i as isize)
                        .iter()
                        .flat_map(|l| {
                            let c = l.cell().expect("cell label");
                            [Label::Twisted(c, false), Label::Twisted(c, true)]
                        })
                        .collect()
                })
                .collect();
            let boundaries = (0..=n)
                .map(|i| {
                    let b = laurent.boundary(i as isize).map(&q, |p| q.reduce(p));
                    restrict_scalars(&q, &b)
                })
                .collect();
            ChainComplex::new(name.clone(), labels, boundaries)
        }
    };
    let c = c.with_name(name);
    debug_assert!(c.check_d_squared(&z).is_ok());
    Ok(c)
}

/// Builds a complex for a family, length and module.
pub fn build(family: Family, n: usize, module: Module) -> Result<Complex> {
    match (family, module) {
        (Family::A, Module::Trivial) => Ok(Complex::Integral(build_a(n)?)),
        (Family::A, m) => Err(Error::UnsupportedCoefficients(format!("type A accepts only trivial coefficients, got {m}"))),
        (Family::B, Module::Laurent) => Ok(Complex::Laurent(build_b_laurent(n)?)),
        (Family::B, m) => Ok(Complex::Integral(build_b_integral(n, m)?)),
    }
}
