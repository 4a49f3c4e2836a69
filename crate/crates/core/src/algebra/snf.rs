//! Smith normal form over Euclidean domains.
//!
//! [`snf`] computes invariant factors only. It first eliminates unit pivots
//! sparsely (Markowitz-style: short rows, sparse columns first) and then
//! finishes the leftover block densely (over ℤ, modulo a multiple of a
//! maximal minor; see [`super::modular`]). [`snf_with_transforms`] works densely
//! throughout and returns unimodular `U`, `V` (and their inverses) with
//! `U A V = D`.

use std::collections::BTreeSet;

use super::ring::EuclideanRing;
use super::sparse::{axpy, SparseMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult<T> {
    /// Nonzero diagonal entries, normalized, each dividing the next.
    pub invariant_factors: Vec<T>,
    pub rank: usize,
}

impl<T: Clone> SnfResult<T> {
    pub fn nonunit_factors<R: EuclideanRing<Elem = T>>(&self, ring: &R) -> Vec<T> {
        self.invariant_factors.iter().filter(|d| !ring.is_unit(d)).cloned().collect()
    }
}

#[derive(Clone, Debug)]
pub struct SnfTransforms<T> {
    /// The full diagonal, length `min(rows, cols)`, zeros at the end.
    pub diagonal: Vec<T>,
    pub rank: usize,
    pub u: Vec<Vec<T>>,
    pub u_inv: Vec<Vec<T>>,
    pub v: Vec<Vec<T>>,
    pub v_inv: Vec<Vec<T>>,
}

pub fn snf<R: EuclideanRing>(ring: &R, a: &SparseMatrix<R::Elem>) -> SnfResult<R::Elem> {
    let (units, rest) = eliminate_unit_pivots(ring, a);
    let mut diag = vec![ring.one(); units];
    if !rest.is_empty() {
        let width = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).max().map_or(0, |c| c + 1);
        let mut dense: Vec<Vec<R::Elem>> = rest
            .iter()
            .map(|row| {
                let mut d = vec![ring.zero(); width];
                for (c, v) in row {
                    d[*c] = v.clone();
                }
                d
            })
            .collect();
        if let Some(factors) = ring.dense_block_factors(&dense) {
            diag.extend(factors);
        } else {
            let mut engine = Dense::new(ring, &mut dense, width, false);
            engine.diagonalize();
            diag.extend(engine.diagonal().into_iter().filter(|d| !ring.is_zero(d)));
        }
    }
    let invariant_factors = smith_chain(ring, diag);
    SnfResult { rank: invariant_factors.len(), invariant_factors }
}

pub fn snf_with_transforms<R: EuclideanRing>(ring: &R, a: &SparseMatrix<R::Elem>) -> SnfTransforms<R::Elem> {
    let mut dense = a.to_dense(ring);
    let (rows, cols) = (a.rows(), a.cols());
    let mut engine = Dense::new(ring, &mut dense, cols, true);
    engine.diagonalize();
    engine.normalize_diagonal();
    let diagonal = engine.diagonal();
    let rank = diagonal.iter().filter(|d| !ring.is_zero(d)).count();
    let t = engine.transforms.take().expect("transforms were tracked");
    debug_assert_eq!((t.u.len(), t.v.len()), (rows, cols));
    SnfTransforms { diagonal, rank, u: t.u, u_inv: t.u_inv, v: t.v, v_inv: t.v_inv }
}

/// Rank over a field, where every nonzero entry is a unit.
pub fn rank<R: EuclideanRing>(ring: &R, a: &SparseMatrix<R::Elem>) -> usize {
    snf(ring, a).rank
}

/// Turns a list of nonzero diagonal entries into a divisibility chain.
pub fn smith_chain<R: EuclideanRing>(ring: &R, diag: Vec<R::Elem>) -> Vec<R::Elem> {
    let mut units = 0;
    let mut rest = Vec::new();
    for d in diag {
        debug_assert!(!ring.is_zero(&d));
        if ring.is_unit(&d) {
            units += 1;
        } else {
            rest.push(ring.normalize(&d).1);
        }
    }
    let k = rest.len();
    for i in 0..k {
        for j in i + 1..k {
            if ring.divides(&rest[i], &rest[j]) {
                continue;
            }
            let g = ring.gcd(&rest[i], &rest[j]);
            let l = ring.div_rem(&ring.mul(&rest[i], &rest[j]), &g).0;
            rest[i] = g;
            rest[j] = ring.normalize(&l).1;
        }
    }
    let mut out = vec![ring.one(); units];
    out.extend(rest.into_iter().map(|d| if ring.is_unit(&d) { ring.one() } else { d }));
    // gcd steps can create new units; they belong at the front.
    let units = out.iter().filter(|d| ring.is_unit(d)).count();
    let mut sorted = vec![ring.one(); units];
    sorted.extend(out.into_iter().filter(|d| !ring.is_unit(d)));
    sorted
}

/// Sparse elimination with unit pivots. Returns the number of pivots and
/// the remaining nonzero rows (column indices are compacted).
fn eliminate_unit_pivots<R: EuclideanRing>(
    ring: &R,
    a: &SparseMatrix<R::Elem>,
) -> (usize, Vec<Vec<(usize, R::Elem)>>) {
    let t = a.transpose();
    let mut rows: Vec<Vec<(usize, R::Elem)>> = t.into_columns();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut pivots = 0;
    loop {
        let mut order: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
        order.sort_by_key(|&r| (rows[r].len(), r));
        let mut progress = false;
        for r in order {
            if rows[r].is_empty() {
                continue;
            }
            let best = rows[r]
                .iter()
                .filter(|(_, v)| ring.is_unit(v))
                .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, u)) = best else { continue };
            let u_inv = ring.unit_inv(&u);
            let pivot_row = std::mem::take(&mut rows[r]);
            for (cc, _) in &pivot_row {
                col_rows[*cc].remove(&r);
            }
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for r2 in others {
                let old = std::mem::take(&mut rows[r2]);
                let entry = old.iter().find(|e| e.0 == c).map(|e| e.1.clone()).expect("column index is consistent");
                let factor = ring.neg(&ring.mul(&entry, &u_inv));
                let new = axpy(ring, &old, &factor, &pivot_row);
                for (cc, _) in &old {
                    col_rows[*cc].remove(&r2);
                }
                for (cc, _) in &new {
                    col_rows[*cc].insert(r2);
                }
                rows[r2] = new;
            }
            debug_assert!(col_rows[c].is_empty());
            // Column operations clear the rest of the pivot row without
            // touching any other row, since column c is now a unit vector.
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let remaining: Vec<Vec<(usize, R::Elem)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut used: Vec<usize> = remaining.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let compacted = remaining
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (used.binary_search(&c).expect("present"), v)).collect())
        .collect();
    (pivots, compacted)
}

struct Transforms<T> {
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    v_inv: Vec<Vec<T>>,
}

struct Dense<'a, R: EuclideanRing> {
    ring: &'a R,
    a: &'a mut Vec<Vec<R::Elem>>,
    rows: usize,
    cols: usize,
    transforms: Option<Transforms<R::Elem>>,
}

fn identity<R: EuclideanRing>(ring: &R, n: usize) -> Vec<Vec<R::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

impl<'a, R: EuclideanRing> Dense<'a, R> {
    fn new(ring: &'a R, a: &'a mut Vec<Vec<R::Elem>>, cols: usize, track: bool) -> Self {
        let rows = a.len();
        let transforms = track.then(|| Transforms {
            u: identity(ring, rows),
            u_inv: identity(ring, rows),
            v: identity(ring, cols),
            v_inv: identity(ring, cols),
        });
        Dense { ring, a, rows, cols, transforms }
    }

    fn diagonal(&self) -> Vec<R::Elem> {
        (0..self.rows.min(self.cols)).map(|i| self.a[i][i].clone()).collect()
    }

    /// Replaces rows `i`, `j` by `m * (row_i; row_j)`; `inv` is `m^{-1}`.
    fn row_combine(&mut self, i: usize, j: usize, m: [[R::Elem; 2]; 2], inv: [[R::Elem; 2]; 2]) {
        let r = self.ring;
        let combine_rows = |x: &mut Vec<Vec<R::Elem>>| {
            let (ri, rj) = (x[i].clone(), x[j].clone());
            for k in 0..ri.len() {
                x[i][k] = r.add(&r.mul(&m[0][0], &ri[k]), &r.mul(&m[0][1], &rj[k]));
                x[j][k] = r.add(&r.mul(&m[1][0], &ri[k]), &r.mul(&m[1][1], &rj[k]));
            }
        };
        combine_rows(self.a);
        if let Some(t) = self.transforms.as_mut() {
            combine_rows(&mut t.u);
            for row in t.u_inv.iter_mut() {
                let (xi, xj) = (row[i].clone(), row[j].clone());
                row[i] = r.add(&r.mul(&xi, &inv[0][0]), &r.mul(&xj, &inv[1][0]));
                row[j] = r.add(&r.mul(&xi, &inv[0][1]), &r.mul(&xj, &inv[1][1]));
            }
        }
    }

    /// Replaces columns `i`, `j` by `(col_i, col_j) * m`; `inv` is `m^{-1}`.
    fn col_combine(&mut self, i: usize, j: usize, m: [[R::Elem; 2]; 2], inv: [[R::Elem; 2]; 2]) {
        let r = self.ring;
        let combine_cols = |x: &mut Vec<Vec<R::Elem>>| {
            for row in x.iter_mut() {
                let (xi, xj) = (row[i].clone(), row[j].clone());
                row[i] = r.add(&r.mul(&xi, &m[0][0]), &r.mul(&xj, &m[1][0]));
                row[j] = r.add(&r.mul(&xi, &m[0][1]), &r.mul(&xj, &m[1][1]));
            }
        };
        combine_cols(self.a);
        if let Some(t) = self.transforms.as_mut() {
            combine_cols(&mut t.v);
            let (vi, vj) = (t.v_inv[i].clone(), t.v_inv[j].clone());
            for k in 0..vi.len() {
                t.v_inv[i][k] = r.add(&r.mul(&inv[0][0], &vi[k]), &r.mul(&inv[0][1], &vj[k]));
                t.v_inv[j][k] = r.add(&r.mul(&inv[1][0], &vi[k]), &r.mul(&inv[1][1], &vj[k]));
            }
        }
    }

    fn swap(&self) -> [[R::Elem; 2]; 2] {
        let r = self.ring;
        [[r.zero(), r.one()], [r.one(), r.zero()]]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            let s = self.swap();
            self.row_combine(i, j, s.clone(), s);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            let s = self.swap();
            self.col_combine(i, j, s.clone(), s);
        }
    }

    /// Clears `a[k][t]` against the pivot `a[t][t]`.
    fn clear_below(&mut self, t: usize, k: usize) {
        let r = self.ring;
        let (p, b) = (self.a[t][t].clone(), self.a[k][t].clone());
        if r.is_zero(&b) {
            return;
        }
        if r.divides(&p, &b) {
            let q = r.div_rem(&b, &p).0;
            let m = [[r.one(), r.zero()], [r.neg(&q), r.one()]];
            let inv = [[r.one(), r.zero()], [q, r.one()]];
            self.row_combine(t, k, m, inv);
        } else {
            let (g, s, u) = r.ext_gcd(&p, &b);
            let pg = r.div_rem(&p, &g).0;
            let bg = r.div_rem(&b, &g).0;
            let m = [[s.clone(), u.clone()], [r.neg(&bg), pg.clone()]];
            let inv = [[pg, r.neg(&u)], [bg, s]];
            self.row_combine(t, k, m, inv);
        }
    }

    fn clear_right(&mut self, t: usize, k: usize) {
        let r = self.ring;
        let (p, b) = (self.a[t][t].clone(), self.a[t][k].clone());
        if r.is_zero(&b) {
            return;
        }
        if r.divides(&p, &b) {
            let q = r.div_rem(&b, &p).0;
            let m = [[r.one(), r.neg(&q)], [r.zero(), r.one()]];
            let inv = [[r.one(), q], [r.zero(), r.one()]];
            self.col_combine(t, k, m, inv);
        } else {
            let (g, s, u) = r.ext_gcd(&p, &b);
            let pg = r.div_rem(&p, &g).0;
            let bg = r.div_rem(&b, &g).0;
            // (p, b) * [[s, -bg], [u, pg]] = (g, 0)
            let m = [[s.clone(), r.neg(&bg)], [u.clone(), pg.clone()]];
            let inv = [[pg, bg], [r.neg(&u), s]];
            self.col_combine(t, k, m, inv);
        }
    }

    fn diagonalize(&mut self) {
        let r = self.ring;
        for t in 0..self.rows.min(self.cols) {
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    let v = &self.a[i][j];
                    if r.is_zero(v) {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => r.cmp_size(v, &self.a[bi][bj]).is_lt(),
                    };
                    if better {
                        best = Some((i, j));
                        if r.is_unit(v) {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| r.is_unit(&self.a[bi][bj])) {
                    break;
                }
            }
            let Some((bi, bj)) = best else { return };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            loop {
                for k in t + 1..self.rows {
                    self.clear_below(t, k);
                }
                for k in t + 1..self.cols {
                    self.clear_right(t, k);
                }
                let row_clear = (t + 1..self.cols).all(|k| r.is_zero(&self.a[t][k]));
                let col_clear = (t + 1..self.rows).all(|k| r.is_zero(&self.a[k][t]));
                if row_clear && col_clear {
                    break;
                }
            }
        }
    }

    /// Normalizes a diagonal matrix into Smith form, tracking transforms.
    fn normalize_diagonal(&mut self) {
        let r = self.ring;
        let k = self.rows.min(self.cols);
        // Zeros last.
        let mut nonzero: Vec<usize> = (0..k).filter(|&i| !r.is_zero(&self.a[i][i])).collect();
        for (slot, &i) in nonzero.clone().iter().enumerate() {
            if slot != i {
                self.swap_rows(slot, i);
                self.swap_cols(slot, i);
            }
        }
        let nz = nonzero.len();
        nonzero.clear();
        for i in 0..nz {
            for j in i + 1..nz {
                let (a, b) = (self.a[i][i].clone(), self.a[j][j].clone());
                if r.divides(&a, &b) {
                    continue;
                }
                let (g, s, u) = r.ext_gcd(&a, &b);
                let ag = r.div_rem(&a, &g).0;
                let bg = r.div_rem(&b, &g).0;
                // L diag(a, b) R = diag(g, ab/g) with det L = det R = 1.
                let lm = [[s.clone(), u.clone()], [r.neg(&bg), ag.clone()]];
                let linv = [[ag.clone(), r.neg(&u)], [bg.clone(), s.clone()]];
                let tb = r.mul(&u, &bg);
                let sa = r.mul(&s, &ag);
                let rm = [[r.one(), r.neg(&tb)], [r.one(), sa.clone()]];
                let rinv = [[sa, tb], [r.neg(&r.one()), r.one()]];
                self.row_combine(i, j, lm, linv);
                self.col_combine(i, j, rm, rinv);
            }
        }
        for i in 0..nz {
            let (unit, _) = r.normalize(&self.a[i][i]);
            if !r.is_one(&unit) {
                self.scale_row(i, &unit);
            }
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem) {
        let r = self.ring;
        let inv = r.unit_inv(unit);
        for x in self.a[i].iter_mut() {
            *x = r.mul(unit, x);
        }
        if let Some(t) = self.transforms.as_mut() {
            for x in t.u[i].iter_mut() {
                *x = r.mul(unit, x);
            }
            for row in t.u_inv.iter_mut() {
                row[i] = r.mul(&row[i], &inv);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Polys;
    use crate::algebra::ring::{Integers, Rationals, Ring};
    use num_bigint::BigInt;

    fn int_matrix(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        SparseMatrix::from_dense(&Integers, &dense, rows[0].len())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_integer_examples() {
        let r = snf(&Integers, &int_matrix(&[&[2, 4], &[6, 8]]));
        assert_eq!(r.invariant_factors, ints(&[2, 4]));
        let r = snf(&Integers, &int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r.invariant_factors, ints(&[1, 1, 1]));
        let r = snf(&Integers, &int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(r.invariant_factors, ints(&[1, 6]));
    }

    #[test]
    fn polynomial_example() {
        let p = Polys::new(Rationals);
        let a = SparseMatrix::from_triplets(
            &p,
            2,
            2,
            [(0, 0, p.from_i64s(&[1, 1])), (1, 1, p.from_i64s(&[1, 0, -1]))],
        );
        let r = snf(&p, &a);
        assert_eq!(r.invariant_factors, vec![p.from_i64s(&[1, 1]), p.from_i64s(&[-1, 0, 1])]);
    }

    #[test]
    fn transforms_recompose() {
        let z = Integers;
        let a = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let t = snf_with_transforms(&z, &a);
        assert_eq!(t.diagonal, ints(&[2, 6, 12]));
        let u = SparseMatrix::from_dense(&z, &t.u, 3);
        let v = SparseMatrix::from_dense(&z, &t.v, 3);
        let d = u.mul(&z, &a).mul(&z, &v);
        let expected = SparseMatrix::from_triplets(&z, 3, 3, (0..3).map(|i| (i, i, t.diagonal[i].clone())));
        assert_eq!(d, expected);
        let ui = SparseMatrix::from_dense(&z, &t.u_inv, 3);
        assert_eq!(u.mul(&z, &ui), SparseMatrix::identity(&z, 3));
        let vi = SparseMatrix::from_dense(&z, &t.v_inv, 3);
        assert_eq!(v.mul(&z, &vi), SparseMatrix::identity(&z, 3));
        assert!(z.is_one(&z.one()));
    }
}
