//! Test-only oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use artin_homology::algebra::SparseMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Smith normal form of a dense integer matrix by textbook row and column
/// operations: returns the rank and the invariant factors greater than 1.
pub fn dense_snf(a: &[Vec<BigInt>]) -> (usize, Vec<BigInt>) {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &m[i][t] * &q;
                    m[i][j] -= v;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if clean {
            diag.push(m[t][t].abs());
            t += 1;
        }
    }
    // Normalize to a divisibility chain: (a, b) -> (gcd, lcm).
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    let rank = diag.len();
    (rank, diag.into_iter().filter(|d| !d.is_one()).collect())
}

pub fn to_dense(m: &SparseMatrix<BigInt>) -> Vec<Vec<BigInt>> {
    let mut d = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for (i, j, v) in m.triplets() {
        d[i][j] = v.clone();
    }
    d
}

/// A random integer matrix with `rows + cols <= max_total`, mixed density and
/// entries in `[-range, range]`.
pub fn random_matrix(rng: &mut ChaCha8Rng, max_total: usize, range: i64) -> Vec<Vec<BigInt>> {
    let rows = rng.gen_range(1..max_total);
    let cols = rng.gen_range(1..=(max_total - rows).max(1));
    let density: f64 = rng.gen_range(0.02..0.6);
    let rank_cap = rng.gen_range(1..=rows.min(cols));
    // Low-rank products exercise nontrivial torsion and kernels.
    if rng.gen_bool(0.3) {
        let left: Vec<Vec<i64>> = (0..rows).map(|_| (0..rank_cap).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let right: Vec<Vec<i64>> = (0..rank_cap).map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        return (0..rows)
            .map(|i| (0..cols).map(|j| BigInt::from((0..rank_cap).map(|k| left[i][k] * right[k][j]).sum::<i64>())).collect())
            .collect();
    }
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(density) { BigInt::from(rng.gen_range(-range..=range)) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}
