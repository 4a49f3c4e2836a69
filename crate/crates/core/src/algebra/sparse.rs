//! Column-major sparse matrices.
//!
//! Entries are plain ring elements; arithmetic is delegated to a ring
//! descriptor passed at the call site. Every column is kept sorted by row
//! index with no stored zeros.

use std::collections::BTreeMap;

use super::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Clone> SparseMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicates are
    /// summed and zeros dropped.
    pub fn from_triplets<R, I>(ring: &R, rows: usize, cols: usize, triplets: I) -> Self
    where
        R: Ring<Elem = T>,
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); cols];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "entry ({i}, {j}) outside {rows}x{cols}");
            match acc[j].get_mut(&i) {
                Some(x) => *x = ring.add(x, &v),
                None => {
                    acc[j].insert(i, v);
                }
            }
        }
        let columns = acc
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect())
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    /// Wraps columns that are already sorted and zero-free.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|e| e.0 < rows)));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_dense<R: Ring<Elem = T>>(ring: &R, dense: &[Vec<T>], cols: usize) -> Self {
        let rows = dense.len();
        let triplets = dense
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(ring, rows, cols, triplets)
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, ring.one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, T)>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<(usize, T)>> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        let col = &self.columns[j];
        col.binary_search_by_key(&i, |e| e.0).ok().map(|k| &col[k].1)
    }

    /// Triplets in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                columns[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn to_dense<R: Ring<Elem = T>>(&self, ring: &R) -> Vec<Vec<T>> {
        let mut d = vec![vec![ring.zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v.clone();
        }
        d
    }

    /// Applies `f` entrywise, dropping entries that become zero in `target`.
    pub fn map<S: Ring>(&self, target: &S, mut f: impl FnMut(&T) -> S::Elem) -> SparseMatrix<S::Elem> {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(i, v)| {
                        let w = f(v);
                        (!target.is_zero(&w)).then_some((*i, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn scale<R: Ring<Elem = T>>(&self, ring: &R, c: &T) -> Self {
        self.map(ring, |v| ring.mul(c, v))
    }

    pub fn add<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| merge_add(ring, a, b))
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn sub<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.map(ring, |v| ring.neg(v)))
    }

    /// `self * other`.
    pub fn mul<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        let p = ring.mul(a, b);
                        match acc.get_mut(i) {
                            Some(x) => *x = ring.add(x, &p),
                            None => {
                                acc.insert(*i, p);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    /// Multiplies a sparse vector (sorted `(index, value)` pairs).
    pub fn mul_vec<R: Ring<Elem = T>>(&self, ring: &R, v: &[(usize, T)]) -> Vec<(usize, T)> {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (k, b) in v {
            for (i, a) in &self.columns[*k] {
                let p = ring.mul(a, b);
                match acc.get_mut(i) {
                    Some(x) => *x = ring.add(x, &p),
                    None => {
                        acc.insert(*i, p);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
    }

    /// Block matrix `[[a, b], [c, d]]`; any block may be absent (zero) as
    /// long as the shapes can be inferred.
    pub fn block(
        row_sizes: (usize, usize),
        col_sizes: (usize, usize),
        blocks: [[Option<&Self>; 2]; 2],
    ) -> Self {
        let rows = row_sizes.0 + row_sizes.1;
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); col_sizes.0 + col_sizes.1];
        for (bc, col_off) in [(0usize, 0usize), (1, col_sizes.0)] {
            let width = if bc == 0 { col_sizes.0 } else { col_sizes.1 };
            for (br, row_off) in [(0usize, 0usize), (1, row_sizes.0)] {
                let height = if br == 0 { row_sizes.0 } else { row_sizes.1 };
                if let Some(m) = blocks[br][bc] {
                    assert_eq!((m.rows, m.cols), (height, width), "block ({br},{bc}) has wrong shape");
                    for (j, col) in m.columns.iter().enumerate() {
                        columns[col_off + j].extend(col.iter().map(|(i, v)| (row_off + i, v.clone())));
                    }
                }
            }
        }
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    /// Keeps the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut new_index = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            new_index[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&j| {
                let mut c: Vec<(usize, T)> = self.columns[j]
                    .iter()
                    .filter(|(i, _)| new_index[*i] != usize::MAX)
                    .map(|(i, v)| (new_index[*i], v.clone()))
                    .collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), columns }
    }
}

fn merge_add<R: Ring>(ring: &R, a: &[(usize, R::Elem)], b: &[(usize, R::Elem)]) -> Vec<(usize, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x].clone());
            x += 1;
        } else if x == a.len() || b[y].0 < a[x].0 {
            out.push(b[y].clone());
            y += 1;
        } else {
            let s = ring.add(&a[x].1, &b[y].1);
            if !ring.is_zero(&s) {
                out.push((a[x].0, s));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

/// `a + c * b` on sorted sparse vectors.
pub fn axpy<R: Ring>(ring: &R, a: &[(usize, R::Elem)], c: &R::Elem, b: &[(usize, R::Elem)]) -> Vec<(usize, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x].clone());
            x += 1;
        } else if x == a.len() || b[y].0 < a[x].0 {
            out.push((b[y].0, ring.mul(c, &b[y].1)));
            y += 1;
        } else {
            let mut s = a[x].1.clone();
            ring.add_mul_assign(&mut s, c, &b[y].1);
            if !ring.is_zero(&s) {
                out.push((a[x].0, s));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        SparseMatrix::from_dense(&Integers, &dense, rows[0].len())
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let b = m(&[&[4, 0], &[1, -1]]);
        assert_eq!(a.mul(&Integers, &b), m(&[&[6, -2], &[3, -3]]));
        assert_eq!(a.transpose(), m(&[&[1, 0], &[2, 3]]));
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn triplets_sum_duplicates() {
        let z = Integers;
        let t = [(0, 0, BigInt::from(1)), (0, 0, BigInt::from(-1)), (1, 0, BigInt::from(2))];
        let a = SparseMatrix::from_triplets(&z, 2, 1, t);
        assert_eq!(a.get(0, 0), None);
        assert_eq!(a.get(1, 0), Some(&BigInt::from(2)));
    }

    #[test]
    fn blocks_and_submatrix() {
        let a = m(&[&[1]]);
        let b = m(&[&[2, 3]]);
        let c = SparseMatrix::block((1, 1), (1, 2), [[Some(&a), None], [None, Some(&b)]]);
        assert_eq!(c, m(&[&[1, 0, 0], &[0, 2, 3]]));
        assert_eq!(c.submatrix(&[1], &[2, 0]), m(&[&[3, 0]]));
    }
}
