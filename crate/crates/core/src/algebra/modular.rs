//! Integer Smith normal form of a dense block, computed modulo a multiple
//! of the last determinantal divisor so that entries stay bounded.
//!
//! Fraction-free (Bareiss) elimination gives the exact rank `r` and a
//! nonzero `r x r` minor `D`. Every nonzero invariant factor divides `D`, so
//! reducing modulo `m = 2|D|` loses nothing: the diagonal of the Smith form
//! over `Z/m` is `gcd(s_i, m) = s_i` for `i < r` and `0` past the rank.
//! Chaining happens modulo `m` as well, since an lcm equal to `m` is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rank and the absolute value of a nonzero maximal minor (1 for the
/// zero matrix).
pub fn rank_and_minor(a: &[Vec<BigInt>]) -> (usize, BigInt) {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut found = None;
        'search: for j in k..cols {
            for (i, row) in m.iter().enumerate().skip(k) {
                if !row[j].is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let p = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..cols {
                let v = &row[j] * p - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = p.clone();
        rank += 1;
    }
    (rank, prev.abs())
}

fn reduce(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Nonzero invariant factors of a dense integer matrix, in divisibility
/// order.
pub fn block_factors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (rank, minor) = rank_and_minor(a);
    if rank == 0 {
        return Vec::new();
    }
    let m: BigInt = minor * 2;
    let mut x: Vec<Vec<BigInt>> = a.iter().map(|row| row.iter().map(|v| reduce(v, &m)).collect()).collect();
    let rows = x.len();
    let cols = x[0].len();
    let mut out = Vec::with_capacity(rank);
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in x.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.magnitude() < x[bi][bj].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        x.swap(t, bi);
        if bj != t {
            for row in x.iter_mut() {
                row.swap(t, bj);
            }
        }
        loop {
            for k in t + 1..rows {
                clear_in_column(&mut x, t, k, &m);
            }
            for k in t + 1..cols {
                clear_in_row(&mut x, t, k, &m);
            }
            if (t + 1..rows).all(|k| x[k][t].is_zero()) {
                break;
            }
        }
        out.push(x[t][t].gcd(&m));
    }
    // Chain the diagonal over Z/m, where an lcm equal to m is zero.
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let g = out[i].gcd(&out[j]);
            let l = out[i].lcm(&out[j]);
            out[i] = g;
            out[j] = l;
        }
    }
    out.retain(|d| *d != m);
    debug_assert_eq!(out.len(), rank);
    out
}

/// Makes `x[k][t]` zero with a determinant-one operation on rows `t`, `k`.
fn clear_in_column(x: &mut [Vec<BigInt>], t: usize, k: usize, m: &BigInt) {
    let b = x[k][t].clone();
    if b.is_zero() {
        return;
    }
    let p = x[t][t].clone();
    let (lo, hi) = x.split_at_mut(k);
    let (rt, rk) = (&mut lo[t], &mut hi[0]);
    if (&b % &p).is_zero() {
        let q = &b / &p;
        for j in t..rt.len() {
            if !rt[j].is_zero() {
                rk[j] = reduce(&(&rk[j] - &q * &rt[j]), m);
            }
        }
    } else {
        let e = p.extended_gcd(&b);
        let (pg, bg) = (&p / &e.gcd, &b / &e.gcd);
        for j in t..rt.len() {
            let (u, v) = (&rt[j], &rk[j]);
            let new_t = reduce(&(&e.x * u + &e.y * v), m);
            let new_k = reduce(&(&pg * v - &bg * u), m);
            rt[j] = new_t;
            rk[j] = new_k;
        }
    }
}

/// Makes `x[t][k]` zero with a determinant-one operation on columns `t`, `k`.
fn clear_in_row(x: &mut [Vec<BigInt>], t: usize, k: usize, m: &BigInt) {
    let b = x[t][k].clone();
    if b.is_zero() {
        return;
    }
    let p = x[t][t].clone();
    if (&b % &p).is_zero() {
        let q = &b / &p;
        for row in x.iter_mut().skip(t) {
            if !row[t].is_zero() {
                row[k] = reduce(&(&row[k] - &q * &row[t]), m);
            }
        }
    } else {
        let e = p.extended_gcd(&b);
        let (pg, bg) = (&p / &e.gcd, &b / &e.gcd);
        for row in x.iter_mut().skip(t) {
            let (u, v) = (row[t].clone(), row[k].clone());
            row[t] = reduce(&(&e.x * &u + &e.y * &v), m);
            row[k] = reduce(&(&pg * &v - &bg * &u), m);
        }
    }
}
