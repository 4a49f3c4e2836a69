//! Named homology generators built from cell words, boundaries and exact
//! divisions, and checks that a list of them is a basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::algebra::linalg::{FieldHomologyBasis, SparseVec, TaggedEchelon};
use crate::algebra::poly::{format_poly, Polys};
use crate::algebra::ring::{EuclideanRing, Field, Integers, Ring};
use crate::algebra::snf::snf_with_transforms;
use crate::complexes::{boundary_a, boundary_b, CellString, ChainComplex, Label, Module};
use crate::error::{Error, Result};
use crate::maps::to_field;

/// A chain over `R[t]`: cells with polynomial coefficients.
pub type PolyChain<T> = BTreeMap<CellString, Vec<T>>;

/// An expression for a chain. Coefficient polynomials are integral, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Cells(Vec<(CellString, Vec<i64>)>),
    Boundary(Box<Expr>),
    Mul(Vec<i64>, Box<Expr>),
    /// Exact division by a polynomial with unit leading coefficient.
    Div(Vec<i64>, Box<Expr>),
    /// Exact division by an integer.
    DivInt(i64, Box<Expr>),
}

impl Expr {
    pub fn cell(c: CellString) -> Self {
        Expr::Cells(vec![(c, vec![1])])
    }

    pub fn boundary(self) -> Self {
        Expr::Boundary(Box::new(self))
    }

    pub fn times(self, p: &[i64]) -> Self {
        Expr::Mul(p.to_vec(), Box::new(self))
    }

    pub fn over(self, p: &[i64]) -> Self {
        Expr::Div(p.to_vec(), Box::new(self))
    }

    pub fn over_int(self, k: i64) -> Self {
        Expr::DivInt(k, Box::new(self))
    }

    /// Homological degree of the chain this evaluates to.
    pub fn degree(&self) -> usize {
        match self {
            Expr::Cells(cs) => cs.first().map_or(0, |(c, _)| c.degree()),
            Expr::Boundary(e) => e.degree() - 1,
            Expr::Mul(_, e) | Expr::Div(_, e) | Expr::DivInt(_, e) => e.degree(),
        }
    }

    /// Length of the strings involved.
    pub fn len(&self) -> usize {
        match self {
            Expr::Cells(cs) => cs.first().map_or(0, |(c, _)| c.len()),
            Expr::Boundary(e) | Expr::Mul(_, e) | Expr::Div(_, e) | Expr::DivInt(_, e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn poly_str(p: &[i64]) -> String {
    format_poly(p.iter().map(ToString::to_string).collect())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Cells(cs) => {
                let parts: Vec<String> = cs
                    .iter()
                    .map(|(c, p)| if p == &[1] { c.to_string() } else { format!("({}){c}", poly_str(p)) })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            Expr::Boundary(e) => write!(f, "∂({e})"),
            Expr::Mul(p, e) => write!(f, "({}){e}", poly_str(p)),
            Expr::Div(p, e) => write!(f, "{e}/({})", poly_str(p)),
            Expr::DivInt(k, e) => write!(f, "{e}/{k}"),
        }
    }
}

fn div_exact_poly<R: EuclideanRing>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let px = Polys::new(ring.clone());
    let b = px.trim(b.to_vec());
    let lead = b.last()?;
    if !ring.is_unit(lead) {
        return None;
    }
    let inv = ring.unit_inv(lead);
    let db = b.len() - 1;
    let mut r = px.trim(a.to_vec());
    if r.is_empty() {
        return Some(r);
    }
    if r.len() <= db {
        return None;
    }
    let mut q = vec![ring.zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = ring.mul(&r[k + db], &inv);
        if ring.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = ring.sub(&r[k + j], &ring.mul(&c, bj));
        }
        q[k] = c;
    }
    r.iter().all(|c| ring.is_zero(c)).then(|| px.trim(q))
}

/// Evaluates an expression with coefficients in `R[t]`.
pub fn resolve<R: EuclideanRing>(ring: &R, e: &Expr) -> Result<PolyChain<R::Elem>> {
    let px = Polys::new(ring.clone());
    let lift = |p: &[i64]| px.from_i64s(p);
    let mut out: PolyChain<R::Elem> = BTreeMap::new();
    let push = |out: &mut PolyChain<R::Elem>, c: CellString, v: Vec<R::Elem>| {
        let slot = out.entry(c).or_default();
        *slot = px.add(slot, &v);
    };
    match e {
        Expr::Cells(cs) => {
            for (c, p) in cs {
                push(&mut out, *c, lift(p));
            }
        }
        Expr::Boundary(inner) => {
            for (x, p) in resolve(ring, inner)? {
                if x.is_marked() {
                    for (y, q) in boundary_b(&x) {
                        let q: Vec<R::Elem> = px.trim(q.iter().map(|c| ring.from_integer(c)).collect());
                        push(&mut out, y, px.mul(&p, &q));
                    }
                } else {
                    for (y, k) in boundary_a(&x) {
                        push(&mut out, y, px.scale(&ring.from_integer(&k), &p));
                    }
                }
            }
        }
        Expr::Mul(m, inner) => {
            let m = lift(m);
            for (x, p) in resolve(ring, inner)? {
                push(&mut out, x, px.mul(&m, &p));
            }
        }
        Expr::Div(d, inner) => {
            let d = lift(d);
            for (x, p) in resolve(ring, inner)? {
                let q = div_exact_poly(ring, &p, &d)
                    .ok_or_else(|| Error::NonExactDivision(format!("coefficient of {x} in {inner} by {}", px.format(&d))))?;
                push(&mut out, x, q);
            }
        }
        Expr::DivInt(k, inner) => {
            let k = ring.from_i64(*k);
            for (x, p) in resolve(ring, inner)? {
                let mut q = Vec::with_capacity(p.len());
                for c in &p {
                    if ring.is_zero(&k) {
                        return Err(Error::NonExactDivision(format!("{inner} by zero")));
                    }
                    let (a, r) = ring.div_rem(c, &k);
                    if !ring.is_zero(&r) {
                        return Err(Error::NonExactDivision(format!("coefficient of {x} in {inner}")));
                    }
                    q.push(a);
                }
                push(&mut out, x, q);
            }
        }
    }
    out.retain(|_, p| !p.is_empty());
    Ok(out)
}

/// Coordinates of a chain in a complex over `R[t]` whose labels are cells.
pub fn laurent_vector<R: Ring>(
    c: &ChainComplex<Vec<BigInt>>,
    degree: usize,
    chain: &PolyChain<R::Elem>,
) -> Result<SparseVec<Vec<R::Elem>>> {
    let mut v: Vec<(usize, Vec<R::Elem>)> = chain
        .iter()
        .map(|(x, p)| {
            c.index_of(degree as isize, &Label::Cell(*x))
                .map(|i| (i, p.clone()))
                .ok_or_else(|| Error::Incompatible(format!("{x} is not a degree-{degree} cell of {}", c.name())))
        })
        .collect::<Result<_>>()?;
    v.sort_by_key(|e| e.0);
    Ok(v)
}

/// Coordinates of a chain in an integral complex with module coefficients
/// (`t` specialized or the `{1, t}` basis), with scalars in `R`.
pub fn module_vector<R: Ring>(
    ring: &R,
    c: &ChainComplex<BigInt>,
    module: Module,
    degree: usize,
    chain: &PolyChain<R::Elem>,
) -> Result<SparseVec<R::Elem>> {
    let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
    let sum_with_sign = |p: &[R::Elem], s: i64, parity: Option<usize>| -> R::Elem {
        let mut a = ring.zero();
        for (k, x) in p.iter().enumerate() {
            if parity.is_some_and(|m| k % 2 != m) {
                continue;
            }
            let x = if s < 0 && k % 2 == 1 { ring.neg(x) } else { x.clone() };
            a = ring.add(&a, &x);
        }
        a
    };
    for (x, p) in chain {
        let parts: Vec<(Label, R::Elem)> = match module {
            Module::Trivial if !x.is_marked() => {
                if p.len() > 1 {
                    return Err(Error::Incompatible(format!("{x} carries a non-constant coefficient")));
                }
                vec![(Label::Cell(*x), p[0].clone())]
            }
            Module::Trivial | Module::Mod1PlusT => vec![(Label::Cell(*x), sum_with_sign(p, -1, None))],
            Module::Mod1MinusT => vec![(Label::Cell(*x), sum_with_sign(p, 1, None))],
            Module::Mod1MinusT2 => vec![
                (Label::Twisted(*x, false), sum_with_sign(p, 1, Some(0))),
                (Label::Twisted(*x, true), sum_with_sign(p, 1, Some(1))),
            ],
            Module::Laurent => return Err(Error::UnsupportedCoefficients("use laurent_vector".into())),
        };
        for (l, v) in parts {
            let i = c
                .index_of(degree as isize, &l)
                .ok_or_else(|| Error::Incompatible(format!("{l} is not a degree-{degree} cell of {}", c.name())))?;
            let slot = acc.entry(i).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &v);
        }
    }
    Ok(acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect())
}

/// A named generator with its expected annihilator (integral coefficients,
/// constant term first; empty when none is claimed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub expr: Expr,
    pub torsion: Vec<i64>,
}

impl Generator {
    pub fn new(name: impl Into<String>, expr: Expr, torsion: Vec<i64>) -> Self {
        Generator { name: name.into(), expr, torsion }
    }

    pub fn degree(&self) -> usize {
        self.expr.degree()
    }

    pub fn len(&self) -> usize {
        self.expr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expr.is_empty()
    }
}

fn pow_poly(p: &[i64], e: u32) -> Vec<i64> {
    let mut out = vec![1i64];
    for _ in 0..e {
        let mut next = vec![0i64; out.len() + p.len() - 1];
        for (i, a) in out.iter().enumerate() {
            for (j, b) in p.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        out = next;
    }
    out
}

pub const ONE_PLUS_T: [i64; 2] = [1, 1];
pub const ONE_MINUS_T: [i64; 2] = [1, -1];
pub const ONE_MINUS_T2: [i64; 3] = [1, 0, -1];

/// `x_i = 1^{2^i - 1} 0`, or `1^{2p^i - 1} 0` for odd `p`.
pub fn x_word(p: u64, i: u32) -> Result<CellString> {
    let ones = if p == 2 { 1usize << i } else { 2 * (p as usize).pow(i) } - 1;
    if ones + 1 > crate::complexes::MAX_BUILD_LEN + 1 {
        return Err(Error::MalformedMonomial(format!("x_{i} at p = {p} is too long")));
    }
    Ok(CellString::ones(ones, false).append_zero())
}

fn drop_last_zero(c: CellString) -> Result<CellString> {
    if c.is_empty() || c.get(c.len() - 1) {
        return Err(Error::MalformedMonomial(format!("{c} does not end in 0")));
    }
    let s = c.slice(0, c.len() - 1);
    Ok(if c.is_marked() { s.with_mark(true) } else { s })
}

/// The unmarked cell of `x_{i_1} ⋯ x_{i_k}` (last 0 dropped).
pub fn a_monomial(p: u64, xs: &[u32]) -> Result<CellString> {
    if xs.is_empty() {
        return Err(Error::MalformedMonomial("empty monomial".into()));
    }
    let mut w = CellString::zeros(0, false);
    for &i in xs {
        w = w.concat(&x_word(p, i)?);
    }
    drop_last_zero(w)
}

/// The marked cell of `z_c x_{i_1} ⋯ x_{i_k}` with `z_c = 1̄ 1^{c-1} 0` and
/// `x_i = 1^{2^i - 1} 0` (last 0 dropped).
pub fn z_monomial(c: usize, xs: &[u32]) -> Result<CellString> {
    if c == 0 {
        return Err(Error::MalformedMonomial("z_c needs c >= 1".into()));
    }
    let mut w = CellString::ones(c, true).append_zero();
    for &i in xs {
        w = w.concat(&x_word(2, i)?);
    }
    drop_last_zero(w)
}

fn word_name(c: usize, xs: &[u32]) -> String {
    let mut s = format!("z_{c}");
    let mut k = 0;
    while k < xs.len() {
        let run = xs[k..].iter().take_while(|&&x| x == xs[k]).count();
        s.push_str(&format!("x_{}", xs[k]));
        if run > 1 {
            s.push_str(&format!("^{run}"));
        }
        k += run;
    }
    s
}

fn check_nondecreasing(xs: &[u32], lower: u32) -> Result<()> {
    if xs.first().is_some_and(|&i| i < lower) || xs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedMonomial(format!("indices {xs:?} must be nondecreasing and at least {lower}")));
    }
    Ok(())
}

/// Nondecreasing index lists with entries `>= lower` and `Σ 2^{i_k} = total`.
pub fn partitions_into_powers(total: usize, lower: u32) -> Vec<Vec<u32>> {
    fn go(rest: usize, lower: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut i = lower;
        while (1usize << i) <= rest {
            prefix.push(i);
            go(rest - (1 << i), i, prefix, out);
            prefix.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    go(total, lower, &mut Vec::new(), &mut out);
    out
}

/// Generators of `H_*(B_n; ℚ[t^{±1}])` on strings of length `n`:
/// `∂(z_{2i+1} x_0^{j-1})/(1+t)`, `∂(z_{2i+1} x_0^{j-1} x_1)/(1+t)` and, for
/// even `n`, `∂(z_n)/(1-t^2)`.
pub fn rational_generators(n: usize) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for i in 0..n {
        let c = 2 * i + 1;
        if c <= n {
            let xs = vec![0; n - c];
            let e = Expr::cell(z_monomial(c, &xs)?).boundary().over(&ONE_PLUS_T);
            out.push(Generator::new(format!("∂({})/(1+t)", word_name(c, &xs)), e, ONE_PLUS_T.to_vec()));
        }
        if c + 2 <= n {
            let mut xs = vec![0; n - c - 2];
            xs.push(1);
            let e = Expr::cell(z_monomial(c, &xs)?).boundary().over(&ONE_PLUS_T);
            out.push(Generator::new(format!("∂({})/(1+t)", word_name(c, &xs)), e, ONE_PLUS_T.to_vec()));
        }
    }
    if n % 2 == 0 && n > 0 {
        let e = Expr::cell(z_monomial(n, &[])?).boundary().over(&ONE_MINUS_T2);
        out.push(Generator::new(format!("∂(z_{n})/(1-t^2)"), e, ONE_MINUS_T2.to_vec()));
    }
    Ok(out)
}

/// The mod-2 generator `∂(z_c y)/f` with `y = x_{i_1} ⋯ x_{i_k}`,
/// `i = v_2(c) <= i_1 <= … <= i_k`, `f = 1+t` for odd `c` and
/// `(1-t^2)^{2^{i-1}}` otherwise.
pub fn mod2_generator(c: usize, xs: &[u32]) -> Result<Generator> {
    if c == 0 {
        return Err(Error::MalformedMonomial("z_c needs c >= 1".into()));
    }
    let v = c.trailing_zeros();
    check_nondecreasing(xs, v)?;
    let (f, fname) = if v == 0 {
        (ONE_PLUS_T.to_vec(), "(1+t)".to_string())
    } else {
        let k = 1u32 << (v - 1);
        (pow_poly(&ONE_MINUS_T2, k), if k == 1 { "(1-t^2)".into() } else { format!("(1-t^2)^{k}") })
    };
    let e = Expr::cell(z_monomial(c, xs)?).boundary().over(&f);
    Ok(Generator::new(format!("∂({})/{fname}", word_name(c, xs)), e, f))
}

/// All mod-2 generators on strings of length `n`.
pub fn mod2_generators(n: usize) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for c in 1..=n {
        for xs in partitions_into_powers(n - c, c.trailing_zeros()) {
            out.push(mod2_generator(c, &xs)?);
        }
    }
    Ok(out)
}

/// `γ̃(z_c, x_0 y) = (1-t) z_{c+1} y` for even `c`.
pub fn gamma_tilde(c: usize, xs: &[u32]) -> Result<Generator> {
    check_gamma(c, xs)?;
    let e = Expr::cell(z_monomial(c + 1, xs)?).times(&ONE_MINUS_T);
    Ok(Generator::new(format!("(1-t){}", word_name(c + 1, xs)), e, ONE_PLUS_T.to_vec()))
}

/// `γ̂(z_c, x_0 y) = ∂(z_{c+1} y)/(1+t)` for even `c`.
pub fn gamma_hat(c: usize, xs: &[u32]) -> Result<Generator> {
    check_gamma(c, xs)?;
    let e = Expr::cell(z_monomial(c + 1, xs)?).boundary().over(&ONE_PLUS_T);
    Ok(Generator::new(format!("∂({})/(1+t)", word_name(c + 1, xs)), e, ONE_PLUS_T.to_vec()))
}

fn check_gamma(c: usize, xs: &[u32]) -> Result<()> {
    if c % 2 == 1 {
        return Err(Error::MalformedMonomial(format!("γ needs an even c, got {c}")));
    }
    check_nondecreasing(xs, 0)
}

/// The γ̃ and γ̂ generators of `H_*(B_n; F_2[t]/(1-t^2))` for odd `n`.
pub fn gamma_generators(n: usize) -> Result<Vec<Generator>> {
    if n % 2 == 0 {
        return Err(Error::InvalidN { n, reason: "the γ generators describe odd n" });
    }
    let mut out = Vec::new();
    for c in (0..n).step_by(2) {
        for xs in partitions_into_powers(n - c - 1, 0) {
            out.push(gamma_tilde(c, &xs)?);
            out.push(gamma_hat(c, &xs)?);
        }
    }
    Ok(out)
}

/// `ω^{(e)}_{2i,j,k}` and `ω̃^{(e)}_{2i,j,k}` for `e ∈ {1, 2}`, `k ∈ {0, 1}`.
pub fn omega(e: u32, i: usize, j: usize, k: u32, tilde: bool) -> Result<Generator> {
    if !(1..=2).contains(&e) || j == 0 || k > 1 {
        return Err(Error::MalformedMonomial(format!("ω needs e in {{1,2}}, j > 0, k in {{0,1}}; got e={e} j={j} k={k}")));
    }
    let mut xs = vec![0; j - 1];
    if k == 1 {
        xs.push(1);
    }
    let c = 2 * i + 1;
    let cell = Expr::cell(z_monomial(c, &xs)?);
    let w = word_name(c, &xs);
    Ok(if tilde {
        let m: Vec<i64> = if e == 1 { ONE_PLUS_T.to_vec() } else { ONE_MINUS_T2.to_vec() };
        let mname = if e == 1 { "(1+t)" } else { "(1-t^2)" };
        Generator::new(format!("{mname}{w}/(1+t)"), cell.times(&m).over(&ONE_PLUS_T), Vec::new())
    } else {
        Generator::new(format!("∂({w})/(1+t)"), cell.boundary().over(&ONE_PLUS_T), Vec::new())
    })
}

/// The set `{ω, ω̃}` of elements of `H_*(B_n; ℤ[t]/(1+t))` (`e = 1`) or
/// `H_*(B_n; ℤ[t]/(1-t^2))` (`e = 2`) on strings of length `n`.
pub fn omega_set(n: usize, e: u32) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for i in 0..n {
        let c = 2 * i + 1;
        for k in 0..2u32 {
            let extra = 2 * k as usize;
            if c + extra <= n && n - c - extra + 1 >= 1 {
                let j = n - c - extra + 1;
                out.push(omega(e, i, j, k, false)?);
                out.push(omega(e, i, j, k, true)?);
            }
        }
    }
    Ok(out)
}

/// `y_i = ∂(x_i)/p` in the type-A complex, `x_i = 1^{2p^i - 1}` (odd `p`)
/// or `1^{2^i - 1}` (`p = 2`, no division).
pub fn y_generator(p: u64, i: u32) -> Result<Generator> {
    let x = drop_last_zero(x_word(p, i)?)?;
    if p == 2 {
        return Ok(Generator::new(format!("x_{i}"), Expr::cell(x), Vec::new()));
    }
    if i == 0 {
        return Err(Error::MalformedMonomial("y_i needs i >= 1".into()));
    }
    let e = Expr::cell(x).boundary().over_int(p as i64);
    Ok(Generator::new(format!("y_{i}"), e, Vec::new()))
}

/// Outcome of [`verify_basis`] in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub degree: usize,
    pub count: usize,
    pub homology_dim: usize,
    pub non_cycles: Vec<String>,
    pub independent: bool,
}

impl BasisReport {
    pub fn is_independent(&self) -> bool {
        self.non_cycles.is_empty() && self.independent
    }

    pub fn is_basis(&self) -> bool {
        self.is_independent() && self.count == self.homology_dim
    }
}

/// Checks that `elems` are cycles of degree `i` whose classes are linearly
/// independent in `H_i(C; F)`, and compares their number with `dim H_i`.
pub fn verify_basis<F: Field>(
    field: &F,
    c: &ChainComplex<BigInt>,
    i: usize,
    elems: &[(String, SparseVec<F::Elem>)],
) -> BasisReport {
    let d_out = to_field(field, &c.boundary(i as isize));
    let basis = FieldHomologyBasis::new(field, &d_out, &to_field(field, &c.boundary(i as isize + 1)));
    let mut non_cycles = Vec::new();
    let mut coords = Vec::new();
    for (name, v) in elems {
        if !d_out.mul_vec(field, v).is_empty() {
            non_cycles.push(name.clone());
            continue;
        }
        coords.push(basis.coordinates(v).expect("cycles have coordinates"));
    }
    let mut echelon = TaggedEchelon::new(field.clone());
    let rank = coords.iter().filter(|v| echelon.insert(v, &[])).count();
    BasisReport {
        degree: i,
        count: elems.len(),
        homology_dim: basis.dim(),
        independent: non_cycles.is_empty() && rank == elems.len(),
        non_cycles,
    }
}

/// Outcome of [`verify_laurent_torsion`] in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBasisReport {
    pub degree: usize,
    pub non_cycles: Vec<String>,
    /// Generators not killed by their claimed annihilator.
    pub not_annihilated: Vec<String>,
    /// `Σ deg f` over the claimed annihilators.
    pub claimed_dim: usize,
    /// Dimension over `F` of the span of the `t^a g`, `a < deg f`.
    pub span_dim: usize,
    /// Dimension over `F` of the torsion of `H_i`.
    pub torsion_dim: usize,
}

impl TorsionBasisReport {
    pub fn is_basis(&self) -> bool {
        self.non_cycles.is_empty()
            && self.not_annihilated.is_empty()
            && self.claimed_dim == self.torsion_dim
            && self.span_dim == self.torsion_dim
    }
}

/// Checks that `gens` (cycles of degree `i` over `F[t^{±1}]`, each with its
/// annihilator) generate the torsion of `H_i` freely: every generator is a
/// cycle killed by its annihilator and the `F`-span of the `t^a g` has the
/// dimension of the torsion.
pub fn verify_laurent_torsion<F: Field + EuclideanRing>(
    field: &F,
    c: &ChainComplex<Vec<BigInt>>,
    i: usize,
    gens: &[Generator],
) -> Result<TorsionBasisReport> {
    let px = Polys::new(field.clone());
    let zt = Polys::new(Integers);
    let conv = |p: &Vec<BigInt>| zt.map_coeffs(&px, p, |x| field.from_integer(x));
    let d_out = c.boundary(i as isize).map(&px, conv);
    let d_in = c.boundary(i as isize + 1).map(&px, conv);
    let snf = snf_with_transforms(&px, &d_in);
    let moduli: Vec<Vec<F::Elem>> = snf.diagonal[..snf.rank]
        .iter()
        .map(|d| px.normalize(&px.strip_t_power(d).1).1)
        .collect();
    let width: Vec<usize> = moduli.iter().map(|g| g.len().saturating_sub(1)).collect();
    let torsion_dim = width.iter().sum();
    let in_new_basis = |v: &SparseVec<Vec<F::Elem>>| -> Vec<Vec<F::Elem>> {
        snf.u
            .iter()
            .map(|row| v.iter().fold(px.zero(), |acc, (k, x)| px.add(&acc, &px.mul(&row[*k], x))))
            .collect()
    };
    let mut report = TorsionBasisReport {
        degree: i,
        non_cycles: Vec::new(),
        not_annihilated: Vec::new(),
        claimed_dim: 0,
        span_dim: 0,
        torsion_dim,
    };
    let mut echelon = TaggedEchelon::new(field.clone());
    for g in gens {
        let f = px.from_i64s(&g.torsion);
        let (_, f_core) = px.strip_t_power(&f);
        let deg = f_core.len().saturating_sub(1);
        report.claimed_dim += deg;
        let v = laurent_vector::<F>(c, i, &resolve(field, &g.expr)?)?;
        if !d_out.mul_vec(&px, &v).is_empty() {
            report.non_cycles.push(g.name.clone());
            continue;
        }
        let cw = in_new_basis(&v);
        let killed = cw.iter().enumerate().all(|(j, x)| {
            let fx = px.mul(&f, x);
            match moduli.get(j) {
                Some(m) => px.divides(m, &fx),
                None => fx.is_empty(),
            }
        });
        if !killed {
            report.not_annihilated.push(g.name.clone());
            continue;
        }
        let mut shifted: Vec<Vec<F::Elem>> = cw;
        for _ in 0..deg {
            let mut flat = Vec::new();
            let mut off = 0;
            for (j, m) in moduli.iter().enumerate() {
                if width[j] > 0 {
                    let r = px.div_rem(&shifted[j], m).1;
                    flat.extend(r.into_iter().enumerate().filter(|(_, x)| !field.is_zero(x)).map(|(k, x)| (off + k, x)));
                }
                off += width[j];
            }
            echelon.insert(&flat, &[]);
            shifted = shifted.iter().map(|x| px.mul(x, &px.monomial(field.one(), 1))).collect();
        }
    }
    report.span_dim = echelon.len();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{PrimeField, Rationals};
    use crate::complexes::{build_b_integral, build_b_laurent};

    fn by_degree(gens: Vec<Generator>, top: usize) -> Vec<Vec<Generator>> {
        let mut out = vec![Vec::new(); top + 1];
        for g in gens {
            out[g.degree()].push(g);
        }
        out
    }

    fn module_elems<F: Field + EuclideanRing>(
        f: &F,
        c: &ChainComplex<BigInt>,
        m: Module,
        gens: &[Generator],
    ) -> Vec<(String, SparseVec<F::Elem>)> {
        gens.iter()
            .map(|g| (g.name.clone(), module_vector(f, c, m, g.degree(), &resolve(f, &g.expr).unwrap()).unwrap()))
            .collect()
    }

    #[test]
    fn monomial_words() {
        assert_eq!(z_monomial(1, &[]).unwrap().to_string(), "1|");
        assert_eq!(z_monomial(2, &[1]).unwrap().to_string(), "1|101");
        assert_eq!(z_monomial(3, &[0, 0]).unwrap().to_string(), "1|1100");
        assert_eq!(a_monomial(2, &[1, 1]).unwrap().to_string(), "101");
        assert!(matches!(mod2_generator(2, &[0]), Err(Error::MalformedMonomial(_))));
        assert!(matches!(mod2_generator(1, &[1, 0]), Err(Error::MalformedMonomial(_))));
        assert!(matches!(z_monomial(0, &[]), Err(Error::MalformedMonomial(_))));
    }

    #[test]
    fn y1_at_three() {
        let y = y_generator(3, 1).unwrap();
        let chain = resolve(&Integers, &y.expr).unwrap();
        let got: Vec<(String, Vec<BigInt>)> = chain.into_iter().map(|(c, p)| (c.to_string(), p)).collect();
        let m1 = vec![BigInt::from(-1)];
        assert_eq!(got, vec![("10111".into(), m1.clone()), ("11101".into(), m1)]);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let e = Expr::cell(z_monomial(2, &[]).unwrap()).boundary().over(&[1, 0, 0, 1]);
        assert!(matches!(resolve(&Integers, &e), Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn rational_generators_span_the_torsion() {
        for n in 1..=6 {
            let c = build_b_laurent(n).unwrap();
            for (i, gens) in by_degree(rational_generators(n).unwrap(), n).iter().enumerate() {
                let r = verify_laurent_torsion(&Rationals, &c, i, gens).unwrap();
                assert!(r.is_basis(), "n={n} i={i} {r:?}");
            }
        }
    }

    #[test]
    fn mod2_generators_span_the_torsion() {
        for n in 1..=6 {
            let c = build_b_laurent(n).unwrap();
            for (i, gens) in by_degree(mod2_generators(n).unwrap(), n).iter().enumerate() {
                let r = verify_laurent_torsion(&PrimeField::new(2), &c, i, gens).unwrap();
                assert!(r.is_basis(), "n={n} i={i} {r:?}");
            }
        }
    }

    #[test]
    fn gamma_generators_are_a_basis() {
        let f = PrimeField::new(2);
        for n in [3, 5, 7] {
            let c = build_b_integral(n, Module::Mod1MinusT2).unwrap();
            for (i, gens) in by_degree(gamma_generators(n).unwrap(), n).iter().enumerate() {
                let r = verify_basis(&f, &c, i, &module_elems(&f, &c, Module::Mod1MinusT2, gens));
                assert!(r.is_basis(), "n={n} i={i} {r:?}");
            }
        }
    }

    #[test]
    fn omega_sets() {
        for n in [3, 5, 7] {
            for (e, m) in [(1, Module::Mod1PlusT), (2, Module::Mod1MinusT2)] {
                let c = build_b_integral(n, m).unwrap();
                for (i, gens) in by_degree(omega_set(n, e).unwrap(), n).iter().enumerate() {
                    let r = verify_basis(&Rationals, &c, i, &module_elems(&Rationals, &c, m, gens));
                    assert!(r.is_basis(), "Q n={n} e={e} i={i} {r:?}");
                    for p in [2, 3, 5] {
                        let f = PrimeField::new(p);
                        let r = verify_basis(&f, &c, i, &module_elems(&f, &c, m, gens));
                        assert!(r.is_independent(), "p={p} n={n} e={e} i={i} {r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_check_rejects_wrong_sets() {
        let c = build_b_laurent(4).unwrap();
        let gens = by_degree(rational_generators(4).unwrap(), 4);
        let mut wrong = gens[3].clone();
        wrong[0].torsion = ONE_PLUS_T.to_vec();
        assert!(!verify_laurent_torsion(&Rationals, &c, 3, &wrong).unwrap().is_basis());
        let boundary = Generator::new("b", Expr::cell(z_monomial(4, &[]).unwrap()).boundary(), ONE_MINUS_T2.to_vec());
        let r = verify_laurent_torsion(&Rationals, &c, 3, &[boundary]).unwrap();
        assert_eq!(r.span_dim, 0);
        assert!(!r.is_basis());
    }
}
