//! Chain maps: stabilization, juxtaposition, `τ`, the section model, the
//! `μ` candidates, composition, mapping cones and induced maps on homology.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::algebra::linalg::{FieldHomologyBasis, SparseVec};
use crate::algebra::ring::{Field, Integers};
use crate::algebra::sparse::SparseMatrix;
use crate::complexes::triplet::{write_matrix_lines, HEADER};
use crate::complexes::{build_a, build_b_integral, CellString, ChainComplex, Label, Module, Side};
use crate::error::{Error, Result};

pub type Complex = Arc<ChainComplex<BigInt>>;

/// Integral chain map `f_i : C_i → D_{i+shift}`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub name: String,
    pub source: Complex,
    pub target: Complex,
    pub shift: isize,
    matrices: Vec<SparseMatrix<BigInt>>,
}

/// Outcome of [`verify_chain_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainMapCheck {
    Ok,
    /// `f ∂ ≠ ∂ f` on this source cell.
    Fails { degree: usize, cell: Label },
}

impl ChainMapCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, ChainMapCheck::Ok)
    }
}

impl ChainMap {
    /// `matrices[i]` is `f_i`; missing degrees are zero.
    pub fn new(
        name: impl Into<String>,
        source: Complex,
        target: Complex,
        shift: isize,
        matrices: Vec<SparseMatrix<BigInt>>,
    ) -> Result<Self> {
        let name = name.into();
        let mut ms = matrices;
        ms.resize_with(source.num_degrees(), || SparseMatrix::zero(0, 0));
        for (i, m) in ms.iter_mut().enumerate() {
            let rows = target.dim(i as isize + shift);
            let cols = source.dim(i as isize);
            if m.rows() == 0 && m.cols() == 0 && (rows, cols) != (0, 0) {
                *m = SparseMatrix::zero(rows, cols);
            }
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Incompatible(format!(
                    "{name}: degree {i} matrix is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ChainMap { name, source, target, shift, matrices: ms })
    }

    /// Builds a map from a cell-level rule `label ↦ Σ c · label'`.
    pub fn from_rule(
        name: impl Into<String>,
        source: Complex,
        target: Complex,
        shift: isize,
        rule: impl Fn(&Label) -> Vec<(Label, BigInt)>,
    ) -> Result<Self> {
        let name = name.into();
        let mut matrices = Vec::new();
        for i in 0..source.num_degrees() as isize {
            let mut triplets = Vec::new();
            for (j, l) in source.labels(i).iter().enumerate() {
                for (img, c) in rule(l) {
                    let row = target.index_of(i + shift, &img).ok_or_else(|| {
                        Error::Incompatible(format!("{name}: image {img} of {l} is not a cell of {}", target.name()))
                    })?;
                    triplets.push((row, j, c));
                }
            }
            matrices.push(SparseMatrix::from_triplets(&Integers, target.dim(i + shift), source.dim(i), triplets));
        }
        ChainMap::new(name, source, target, shift, matrices)
    }

    pub fn zero(name: impl Into<String>, source: Complex, target: Complex, shift: isize) -> Self {
        ChainMap::new(name, source, target, shift, Vec::new()).expect("zero map has the right shapes")
    }

    pub fn identity(c: Complex) -> Self {
        let matrices = (0..c.num_degrees()).map(|i| SparseMatrix::identity(&Integers, c.dim(i as isize))).collect();
        ChainMap::new(format!("id[{}]", c.name()), c.clone(), c, 0, matrices).expect("identity shapes")
    }

    /// `f_i`, zero outside the source range.
    pub fn matrix(&self, i: isize) -> SparseMatrix<BigInt> {
        if i >= 0 && (i as usize) < self.matrices.len() {
            self.matrices[i as usize].clone()
        } else {
            SparseMatrix::zero(self.target.dim(i + self.shift), self.source.dim(i))
        }
    }

    /// Applies the map to a chain of degree `i`.
    pub fn apply(&self, i: usize, v: &[(usize, BigInt)]) -> SparseVec<BigInt> {
        self.matrix(i as isize).mul_vec(&Integers, v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && self.target.dims() != other.source.dims() {
            return Err(Error::Incompatible(format!("cannot compose {} with {}", self.name, other.name)));
        }
        let matrices = (0..self.source.num_degrees() as isize)
            .map(|i| other.matrix(i + self.shift).mul(&Integers, &self.matrix(i)))
            .collect();
        ChainMap::new(
            format!("{}∘{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            self.shift + other.shift,
            matrices,
        )
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.shift != other.shift || self.source.dims() != other.source.dims() || self.target.dims() != other.target.dims() {
            return Err(Error::Incompatible(format!("cannot subtract {} from {}", other.name, self.name)));
        }
        let matrices = (0..self.source.num_degrees() as isize)
            .map(|i| self.matrix(i).sub(&Integers, &other.matrix(i)))
            .collect();
        ChainMap::new(format!("{} - {}", self.name, other.name), self.source.clone(), self.target.clone(), self.shift, matrices)
    }

    /// Serializes in the sparse triplet format, one line per entry of `f_i`
    /// with `i` the source degree.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "# map: {}", self.name);
        let _ = writeln!(out, "# source: {}", self.source.name());
        let _ = writeln!(out, "# target: {}", self.target.name());
        let _ = writeln!(out, "# shift: {}", self.shift);
        for i in 0..self.source.num_degrees() as isize {
            write_matrix_lines(&mut out, i, self.target.labels(i + self.shift), self.source.labels(i), &self.matrix(i));
        }
        out
    }
}

/// Checks `f_{i-1} ∂_i = ∂_{i+d} f_i` for every source degree.
pub fn verify_chain_map(f: &ChainMap) -> ChainMapCheck {
    let z = Integers;
    for i in 0..f.source.num_degrees() as isize {
        let lhs = f.matrix(i - 1).mul(&z, &f.source.boundary(i));
        let rhs = f.target.boundary(i + f.shift).mul(&z, &f.matrix(i));
        if lhs != rhs {
            let j = (0..lhs.cols()).find(|&j| lhs.column(j) != rhs.column(j)).expect("some column differs");
            return ChainMapCheck::Fails { degree: i as usize, cell: f.source.labels(i)[j].clone() };
        }
    }
    ChainMapCheck::Ok
}

fn relabel_cell(l: &Label, f: impl Fn(&CellString) -> CellString) -> Label {
    match l {
        Label::Cell(c) => Label::Cell(f(c)),
        Label::Twisted(c, s) => Label::Twisted(f(c), *s),
        Label::Cone(side, inner) => Label::Cone(*side, Box::new(relabel_cell(inner, f))),
    }
}

/// `x ↦ x0` from `A(n)` to `A(n+1)`.
pub fn st_a(n: usize) -> Result<ChainMap> {
    let (s, t) = (Arc::new(build_a(n)?), Arc::new(build_a(n + 1)?));
    ChainMap::from_rule(format!("st_A({n})"), s, t, 0, |l| vec![(relabel_cell(l, CellString::append_zero), BigInt::one())])
}

/// `x ↦ x0` from `B(n, m)` to `B(n+1, m)`.
pub fn st_b(n: usize, module: Module) -> Result<ChainMap> {
    let (s, t) = (Arc::new(build_b_integral(n, module)?), Arc::new(build_b_integral(n + 1, module)?));
    st_b_between(s, t)
}

/// Stabilization between already built type-B complexes.
pub fn st_b_between(source: Complex, target: Complex) -> Result<ChainMap> {
    let name = format!("st_B[{}]", source.name());
    ChainMap::from_rule(name, source, target, 0, |l| vec![(relabel_cell(l, CellString::append_zero), BigInt::one())])
}

/// `(A, B) ↦ A0B` on chains of `A(n1)` and `A(n2)`, giving a chain of
/// `A(n1 + n2 + 1)` as `(cell, coefficient)` pairs.
pub fn juxtaposition(a: &[(CellString, BigInt)], b: &[(CellString, BigInt)]) -> Vec<(CellString, BigInt)> {
    let mut acc: BTreeMap<CellString, BigInt> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *acc.entry(x.juxtapose(y)).or_default() += c * d;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `x ⊗ 1 ↦ x ⊗ (1 - t)` from `B(n, mod1+t)` to `B(n, mod1-t2)`.
pub fn tau(n: usize) -> Result<ChainMap> {
    let s = Arc::new(build_b_integral(n, Module::Mod1PlusT)?);
    let t = Arc::new(build_b_integral(n, Module::Mod1MinusT2)?);
    tau_between(s, t)
}

pub fn tau_between(source: Complex, target: Complex) -> Result<ChainMap> {
    let name = format!("tau[{}]", source.name());
    ChainMap::from_rule(name, source, target, 0, |l| {
        let c = l.cell().expect("cell label");
        vec![(Label::Twisted(c, false), BigInt::one()), (Label::Twisted(c, true), -BigInt::one())]
    })
}

/// The unit `u` used by the section model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionUnit {
    One,
    OnePlusT,
    OneMinusT,
}

impl SectionUnit {
    pub const ALL: [SectionUnit; 3] = [SectionUnit::One, SectionUnit::OnePlusT, SectionUnit::OneMinusT];

    fn components(self) -> (i64, i64) {
        match self {
            SectionUnit::One => (1, 0),
            SectionUnit::OnePlusT => (1, 1),
            SectionUnit::OneMinusT => (1, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SectionUnit::One => "1",
            SectionUnit::OnePlusT => "1+t",
            SectionUnit::OneMinusT => "1-t",
        }
    }
}

/// `A ↦ 0̄A ⊗ u` from `A(n-1)` to `B(n, mod1-t2)`.
pub fn section_model(n: usize, u: SectionUnit) -> Result<ChainMap> {
    if n == 0 {
        return Err(Error::InvalidN { n, reason: "the section model needs n >= 1" });
    }
    let s = Arc::new(build_a(n - 1)?);
    let t = Arc::new(build_b_integral(n, Module::Mod1MinusT2)?);
    section_between(s, t, u)
}

pub fn section_between(source: Complex, target: Complex, u: SectionUnit) -> Result<ChainMap> {
    let (a, b) = u.components();
    let name = format!("s_{}[{}]", u.name(), source.name());
    ChainMap::from_rule(name, source, target, 0, |l| {
        let c = l.cell().expect("cell label");
        let x = CellString::zeros(1, true).concat(&c);
        [(false, a), (true, b)]
            .into_iter()
            .filter(|(_, k)| *k != 0)
            .map(|(tw, k)| (Label::Twisted(x, tw), BigInt::from(k)))
            .collect()
    })
}

/// A registered chain-level model of `μ(- ⊗ [S^1])`, a degree +1 map from
/// `B(n-1, mod1+t)` to `B(n, mod1+t)`.
#[derive(Clone, Copy, Debug)]
pub struct MuCandidate {
    pub name: &'static str,
    pub version: u32,
    rule: fn(&CellString) -> Vec<(CellString, i64)>,
}

fn prepend_one(x: &CellString) -> CellString {
    CellString::ones(1, true).concat(&x.with_mark(false))
}

fn signed_insert(x: &CellString) -> Vec<(CellString, i64)> {
    let s = if x.degree() % 2 == 0 { 1 } else { -1 };
    vec![(prepend_one(x), s)]
}

fn weight_two_insert(x: &CellString) -> Vec<(CellString, i64)> {
    signed_insert(x).into_iter().map(|(c, k)| (c, 2 * k)).collect()
}

fn unsigned_insert(x: &CellString) -> Vec<(CellString, i64)> {
    vec![(prepend_one(x), 1)]
}

/// Weight `1 + t`, which vanishes once `t = -1`.
fn one_plus_t_insert(_: &CellString) -> Vec<(CellString, i64)> {
    Vec::new()
}

/// Inserts the new 1 right after the marked slot instead of before it.
fn adjacent_insert(x: &CellString) -> Vec<(CellString, i64)> {
    let head = CellString::from_slice(&[x.get(0) as u8], true);
    let s = if x.get(0) { -1 } else { 1 };
    vec![(head.concat(&CellString::ones(1, false)).concat(&x.drop_front(1)), s)]
}

pub const MU_CANDIDATES: [MuCandidate; 5] = [
    MuCandidate { name: "signed-insert", version: 1, rule: signed_insert },
    MuCandidate { name: "weight-two-insert", version: 1, rule: weight_two_insert },
    MuCandidate { name: "unsigned-insert", version: 1, rule: unsigned_insert },
    MuCandidate { name: "one-plus-t-insert", version: 1, rule: one_plus_t_insert },
    MuCandidate { name: "adjacent-insert", version: 1, rule: adjacent_insert },
];

/// The candidate the assembler uses unless told otherwise.
pub const DEFAULT_MU: &str = "signed-insert";

pub fn mu_candidate(name: &str) -> Result<MuCandidate> {
    MU_CANDIDATES
        .iter()
        .copied()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown mu candidate '{name}'")))
}

impl MuCandidate {
    /// The map `B(n-1, mod1+t) → B(n, mod1+t)` of degree +1.
    pub fn build(&self, n: usize) -> Result<ChainMap> {
        if n < 2 {
            return Err(Error::InvalidN { n, reason: "mu needs n >= 2" });
        }
        let s = Arc::new(build_b_integral(n - 1, Module::Mod1PlusT)?);
        let t = Arc::new(build_b_integral(n, Module::Mod1PlusT)?);
        self.build_between(s, t)
    }

    pub fn build_between(&self, source: Complex, target: Complex) -> Result<ChainMap> {
        let rule = self.rule;
        let name = format!("mu:{}[{}]", self.name, source.name());
        ChainMap::from_rule(name, source, target, 1, |l| {
            let c = l.cell().expect("cell label");
            rule(&c).into_iter().map(|(x, k)| (Label::Cell(x), BigInt::from(k))).collect()
        })
    }
}

/// Shifts a complex up by `s`: `C'_k = C_{k-s}` with the same differential.
pub fn shift_complex(c: &ChainComplex<BigInt>, s: usize, name: impl Into<String>) -> ChainComplex<BigInt> {
    let mut labels: Vec<Vec<Label>> = vec![Vec::new(); s];
    labels.extend((0..c.num_degrees()).map(|i| c.labels(i as isize).to_vec()));
    let boundaries = (0..labels.len())
        .map(|k| {
            if k <= s {
                let rows = if k == 0 { 0 } else { labels[k - 1].len() };
                SparseMatrix::zero(rows, labels[k].len())
            } else {
                c.boundary((k - s) as isize).into_owned()
            }
        })
        .collect();
    ChainComplex::new(name, labels, boundaries)
}

/// Reinterprets a degree-`s` map `C → D` as a degree-0 map `C[s] → D`,
/// where `C[s]_k = C_{k-s}`.
pub fn shifted_source(f: &ChainMap, shifted: Complex) -> Result<ChainMap> {
    let s = f.shift as usize;
    let matrices = (0..shifted.num_degrees() as isize)
        .map(|k| {
            if (k as usize) < s {
                SparseMatrix::zero(f.target.dim(k), shifted.dim(k))
            } else {
                f.matrix(k - s as isize)
            }
        })
        .collect();
    ChainMap::new(format!("{}[shifted]", f.name), shifted, f.target.clone(), 0, matrices)
}

/// `Cone(f)_k = A_{k-1} ⊕ B_k` with `D(a, b) = (-∂a, f(a) + ∂b)`, for a
/// degree-0 map `f : A → B`.
pub fn cone(f: &ChainMap, name: impl Into<String>) -> Result<ChainComplex<BigInt>> {
    if f.shift != 0 {
        return Err(Error::Incompatible("the mapping cone needs a degree-0 map".into()));
    }
    let (a, b) = (&f.source, &f.target);
    let top = a.num_degrees().max(b.num_degrees().saturating_sub(1)) + 1;
    let z = Integers;
    let labels: Vec<Vec<Label>> = (0..top as isize)
        .map(|k| {
            a.labels(k - 1)
                .iter()
                .map(|l| Label::Cone(Side::Source, Box::new(l.clone())))
                .chain(b.labels(k).iter().map(|l| Label::Cone(Side::Target, Box::new(l.clone()))))
                .collect()
        })
        .collect();
    let boundaries = (0..top as isize)
        .map(|k| {
            let da = a.boundary(k - 1).map(&z, |v| -v);
            let fa = f.matrix(k - 1);
            let db = b.boundary(k);
            SparseMatrix::block(
                (a.dim(k - 2), b.dim(k - 1)),
                (a.dim(k - 1), b.dim(k)),
                [[Some(&da), None], [Some(&fa), Some(&db)]],
            )
        })
        .collect();
    Ok(ChainComplex::new(name, labels, boundaries))
}

/// The inclusion `B → Cone(f)`, `b ↦ (0, b)`.
pub fn cone_inclusion(f: &ChainMap, cone: Complex) -> Result<ChainMap> {
    let b = f.target.clone();
    let matrices = (0..b.num_degrees() as isize)
        .map(|k| {
            let off = f.source.dim(k - 1);
            let t = (0..b.dim(k)).map(|j| (off + j, j, BigInt::one()));
            SparseMatrix::from_triplets(&Integers, cone.dim(k), b.dim(k), t)
        })
        .collect();
    ChainMap::new(format!("J[{}]", cone.name()), b, cone, 0, matrices)
}

/// Reduces an integral matrix into a field.
pub fn to_field<F: Field>(field: &F, m: &SparseMatrix<BigInt>) -> SparseMatrix<F::Elem> {
    m.map(field, |v| field.from_integer(v))
}

/// Homology bases over a field for degree `i` of an integral complex.
pub fn field_basis<F: Field>(field: &F, c: &ChainComplex<BigInt>, i: usize) -> FieldHomologyBasis<F> {
    FieldHomologyBasis::new(field, &to_field(field, &c.boundary(i as isize)), &to_field(field, &c.boundary(i as isize + 1)))
}

/// Matrix of `f_* : H_i(C; F) → H_{i+d}(D; F)` in the chosen bases, with a
/// hash identifying those bases.
#[derive(Clone, Debug)]
pub struct InducedMap<F: Field> {
    pub degree: usize,
    pub matrix: SparseMatrix<F::Elem>,
    pub basis_hash: String,
}

pub fn basis_hash<F: Field>(field: &F, source: &FieldHomologyBasis<F>, target: &FieldHomologyBasis<F>) -> String {
    let mut h = Sha256::new();
    for b in [source, target] {
        for r in b.representatives() {
            for (i, v) in r {
                h.update(format!("{i}:{};", field.format(v)).as_bytes());
            }
            h.update(b"|");
        }
        h.update(b"#");
    }
    hex::encode(&h.finalize()[..8])
}

pub fn induced_on_homology<F: Field>(field: &F, f: &ChainMap, i: usize) -> Result<InducedMap<F>> {
    let j = i as isize + f.shift;
    if j < 0 {
        return Err(Error::Precondition(format!("{} lands below degree 0", f.name)));
    }
    let src = field_basis(field, &f.source, i);
    let tgt = field_basis(field, &f.target, j as usize);
    induced_with_bases(field, f, i, &src, &tgt)
}

pub fn induced_with_bases<F: Field>(
    field: &F,
    f: &ChainMap,
    i: usize,
    src: &FieldHomologyBasis<F>,
    tgt: &FieldHomologyBasis<F>,
) -> Result<InducedMap<F>> {
    let m = to_field(field, &f.matrix(i as isize));
    let mut columns = Vec::new();
    for rep in src.representatives() {
        let img = m.mul_vec(field, rep);
        let coords = tgt
            .coordinates(&img)
            .ok_or_else(|| Error::NotAChainMap(format!("{} sends a cycle to a non-cycle", f.name)))?;
        columns.push(coords);
    }
    Ok(InducedMap {
        degree: i,
        matrix: SparseMatrix::from_columns(tgt.dim(), columns),
        basis_hash: basis_hash(field, src, tgt),
    })
}

/// Whether `f_* = g_*` on `H_i` over `field` (both maps must share source,
/// target and degree).
pub fn agree_on_homology<F: Field>(field: &F, f: &ChainMap, g: &ChainMap, i: usize) -> Result<bool> {
    let d = f.sub(g)?;
    let j = i as isize + d.shift;
    if j < 0 || j as usize >= d.target.num_degrees() {
        return Ok(true);
    }
    let src = field_basis(field, &d.source, i);
    let tgt = field_basis(field, &d.target, j as usize);
    let m = to_field(field, &d.matrix(i as isize));
    Ok(src.representatives().iter().all(|r| tgt.is_boundary(&m.mul_vec(field, r))))
}
