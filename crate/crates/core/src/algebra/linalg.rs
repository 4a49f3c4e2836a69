//! Linear algebra over fields: ranks of integer matrices, kernels, and
//! reduction of vectors modulo a subspace with coordinate tracking.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::ring::{Field, PrimeField, Rationals, Ring};
use super::snf::rank;
use super::sparse::{axpy, SparseMatrix};

pub type SparseVec<T> = Vec<(usize, T)>;

/// The two large primes used for modular rank over ℚ.
pub fn rank_primes() -> [u64; 2] {
    [2305843009213693951, 4611686018427387847]
}

pub fn reduce_mod_p(a: &SparseMatrix<BigInt>, f: &PrimeField) -> SparseMatrix<u64> {
    a.map(f, |v| f.from_integer(v))
}

pub fn rank_mod_p(a: &SparseMatrix<BigInt>, p: u64) -> usize {
    let f = PrimeField::new(p);
    rank(&f, &reduce_mod_p(a, &f))
}

/// Rank over ℚ of an integer matrix. The modular path takes the larger of
/// the ranks modulo two 61-bit primes (each is a lower bound for the rational
/// rank); `exact` eliminates over ℚ instead.
pub fn rank_over_q(a: &SparseMatrix<BigInt>, exact: bool) -> usize {
    if exact {
        let q = Rationals;
        rank(&q, &a.map(&q, |v| q.from_integer(v)))
    } else {
        rank_primes().iter().map(|&p| rank_mod_p(a, p)).max().unwrap_or(0)
    }
}

/// Basis of the kernel of `a` as sparse column vectors.
pub fn kernel<F: Field>(field: &F, a: &SparseMatrix<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let mut pivots: BTreeMap<usize, (SparseVec<F::Elem>, SparseVec<F::Elem>)> = BTreeMap::new();
    let mut out = Vec::new();
    for j in 0..a.cols() {
        let mut col: SparseVec<F::Elem> = a.column(j).to_vec();
        let mut comb: SparseVec<F::Elem> = vec![(j, field.one())];
        while let Some((low, v)) = col.last().cloned() {
            match pivots.get(&low) {
                Some((pc, pv)) => {
                    let c = field.neg(&field.div(&v, &pc.last().expect("nonempty pivot").1));
                    col = axpy(field, &col, &c, pc);
                    comb = axpy(field, &comb, &c, pv);
                }
                None => break,
            }
        }
        match col.last() {
            Some((low, _)) => {
                pivots.insert(*low, (col, comb));
            }
            None => out.push(comb),
        }
    }
    out
}

/// A subspace in echelon form (pivot = largest index) where every stored
/// vector carries a tag vector; reducing a vector accumulates the tags of
/// the vectors subtracted.
#[derive(Clone, Debug)]
pub struct TaggedEchelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, (SparseVec<F::Elem>, SparseVec<F::Elem>)>,
}

impl<F: Field> TaggedEchelon<F> {
    pub fn new(field: F) -> Self {
        TaggedEchelon { field, rows: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` as far as possible; returns the residual and the
    /// accumulated tag (so that `v = residual + Σ c_k v_k` and
    /// `tag = Σ c_k tag_k`).
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut v = v.to_vec();
        let mut tag: SparseVec<F::Elem> = Vec::new();
        // Fully reduce: walk pivots from the top, skipping entries that are
        // not pivots.
        let mut bound = usize::MAX;
        loop {
            let next = v.iter().rev().find(|(i, _)| *i < bound && self.rows.contains_key(i)).cloned();
            let Some((low, c)) = next else { break };
            let (pv, pt) = &self.rows[&low];
            let k = f.div(&c, &pv.last().expect("nonempty").1);
            v = axpy(f, &v, &f.neg(&k), pv);
            tag = axpy(f, &tag, &k, pt);
            bound = low;
        }
        (v, tag)
    }

    /// Inserts `v` with `tag` after reducing it; returns false if `v` was
    /// already in the span.
    pub fn insert(&mut self, v: &[(usize, F::Elem)], tag: &[(usize, F::Elem)]) -> bool {
        let f = self.field.clone();
        let (res, acc) = self.reduce(v);
        match res.last() {
            None => false,
            Some((low, _)) => {
                let low = *low;
                let t = axpy(&f, tag, &f.neg(&f.one()), &acc);
                self.rows.insert(low, (res, t));
                true
            }
        }
    }
}

/// Homology of `C_{i+1} → C_i → C_{i-1}` over a field, with chosen
/// representative cycles and a coordinate map on cycles.
#[derive(Clone, Debug)]
pub struct FieldHomologyBasis<F: Field> {
    field: F,
    reps: Vec<SparseVec<F::Elem>>,
    echelon: TaggedEchelon<F>,
}

impl<F: Field> FieldHomologyBasis<F> {
    /// `d_out` is `∂_i` (cells of degree i → i-1), `d_in` is `∂_{i+1}`.
    pub fn new(field: &F, d_out: &SparseMatrix<F::Elem>, d_in: &SparseMatrix<F::Elem>) -> Self {
        let mut echelon = TaggedEchelon::new(field.clone());
        for j in 0..d_in.cols() {
            echelon.insert(d_in.column(j), &[]);
        }
        let mut reps = Vec::new();
        for z in kernel(field, d_out) {
            let (res, _) = echelon.reduce(&z);
            if res.is_empty() {
                continue;
            }
            let k = reps.len();
            echelon.insert(&res, &[(k, field.one())]);
            reps.push(res);
        }
        FieldHomologyBasis { field: field.clone(), reps, echelon }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Representative cycles, one per basis class.
    pub fn representatives(&self) -> &[SparseVec<F::Elem>] {
        &self.reps
    }

    /// Coordinates of the class of a cycle; `None` if `z` is not in the
    /// cycle space spanned by boundaries and representatives.
    pub fn coordinates(&self, z: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let (res, tag) = self.echelon.reduce(z);
        res.is_empty().then_some(tag)
    }

    pub fn is_boundary(&self, z: &[(usize, F::Elem)]) -> bool {
        self.coordinates(z).is_some_and(|c| c.is_empty())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let z = crate::algebra::ring::Integers;
        let ones = SparseMatrix::from_triplets(&z, 2, 2, (0..4).map(|k| (k / 2, k % 2, BigInt::from(1))));
        assert_eq!(rank_mod_p(&ones, 2), 1);
        assert_eq!(rank_over_q(&ones, true), 1);
        let two = SparseMatrix::from_triplets(&z, 1, 1, [(0, 0, BigInt::from(2))]);
        assert_eq!(rank_mod_p(&two, 2), 0);
        assert_eq!(rank_over_q(&two, false), 1);
        assert_eq!(rank_over_q(&SparseMatrix::zero(3, 3), false), 0);
    }

    #[test]
    fn rank_primes_are_prime() {
        for p in rank_primes() {
            assert!(crate::algebra::ring::is_prime(p));
        }
    }

    #[test]
    fn kernel_and_homology_of_a_circle() {
        // Circle with two vertices and two edges: H_1 has dimension 1.
        let f = PrimeField::new(3);
        let d1 = SparseMatrix::from_triplets(&f, 2, 2, [(0, 0, 1), (1, 0, 2), (0, 1, 2), (1, 1, 1)]);
        let ker = kernel(&f, &d1);
        assert_eq!(ker.len(), 1);
        let h1 = FieldHomologyBasis::new(&f, &d1, &SparseMatrix::zero(2, 0));
        assert_eq!(h1.dim(), 1);
        let h0 = FieldHomologyBasis::new(&f, &SparseMatrix::zero(0, 2), &d1);
        assert_eq!(h0.dim(), 1);
        assert_eq!(h0.coordinates(&[(0, 1)]), h0.coordinates(&[(1, 1)]));
        assert!(h0.is_boundary(&[(0, 1), (1, 2)]));
    }
}
