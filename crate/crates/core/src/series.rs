//! Truncated bivariate power series in `q` and `t` and the generating
//! functions checked against computed homology.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// `Σ c_{a,b} q^a t^b` with `a <= max_q`, `b <= max_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    max_q: usize,
    max_t: usize,
    /// `coeffs[a][b]`.
    coeffs: Vec<Vec<BigInt>>,
}

impl FormalSeries {
    pub fn zero(max_q: usize, max_t: usize) -> Self {
        FormalSeries { max_q, max_t, coeffs: vec![vec![BigInt::zero(); max_t + 1]; max_q + 1] }
    }

    pub fn one(max_q: usize, max_t: usize) -> Self {
        Self::monomial(max_q, max_t, 0, 0)
    }

    /// `q^a t^b`, or zero if it lies beyond the bounds.
    pub fn monomial(max_q: usize, max_t: usize, a: usize, b: usize) -> Self {
        let mut s = Self::zero(max_q, max_t);
        if a <= max_q && b <= max_t {
            s.coeffs[a][b] = BigInt::from(1);
        }
        s
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn max_t(&self) -> usize {
        self.max_t
    }

    /// Coefficient of `q^a t^b`; `None` beyond the truncation.
    pub fn coefficient(&self, a: usize, b: usize) -> Option<&BigInt> {
        self.coeffs.get(a)?.get(b)
    }

    /// Coefficient as `u64`, panicking beyond the truncation or on overflow.
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.coefficient(a, b)
            .unwrap_or_else(|| panic!("q^{a} t^{b} lies beyond the truncation"))
            .to_u64()
            .expect("coefficient fits in u64")
    }

    /// Product, valid up to the smaller of the two bounds.
    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let (mq, mt) = (self.max_q.min(other.max_q), self.max_t.min(other.max_t));
        let mut out = Self::zero(mq, mt);
        for a in 0..=mq {
            for b in 0..=mt {
                let x = &self.coeffs[a][b];
                if x.is_zero() {
                    continue;
                }
                for c in 0..=mq - a {
                    for d in 0..=mt - b {
                        let y = &other.coeffs[c][d];
                        if !y.is_zero() {
                            out.coeffs[a + c][b + d] += x * y;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `1 / (1 - q^a t^b)` in place; `(a, b) ≠ (0, 0)`.
    pub fn mul_geometric(&mut self, a: usize, b: usize) {
        assert!(a + b > 0, "1/(1 - 1) is not a power series");
        if a > self.max_q || b > self.max_t {
            return;
        }
        for x in a..=self.max_q {
            for y in b..=self.max_t {
                let prev = self.coeffs[x - a][y - b].clone();
                self.coeffs[x][y] += prev;
            }
        }
    }

    /// Multiplies by `∏_{i >= first} 1/(1 - q^{2^i - 1} t^{2^i · t_weight})`,
    /// cutting the product at the first factor beyond both bounds.
    fn mul_power_product(&mut self, first: u32, t_weight: usize) {
        let mut i = first;
        loop {
            let (a, b) = ((1usize << i) - 1, (1usize << i) * t_weight);
            let beyond = a > self.max_q || b > self.max_t;
            if beyond {
                // Every later factor has larger exponents in both variables.
                debug_assert!(((1usize << (i + 1)) - 1 > self.max_q) || ((1usize << (i + 1)) * t_weight > self.max_t));
                break;
            }
            self.mul_geometric(a, b);
            i += 1;
        }
    }

    /// Nonzero coefficients as `((a, b), c)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(b, c)| ((a, b), c)))
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for ((a, b), c) in self.terms() {
            let mut m = String::new();
            if a > 0 {
                m.push_str(&if a == 1 { "q".into() } else { format!("q^{a}") });
            }
            if b > 0 {
                m.push_str(&if b == 1 { "t".into() } else { format!("t^{b}") });
            }
            parts.push(match (c.to_string().as_str(), m.is_empty()) {
                (s, true) => s.to_string(),
                ("1", false) => m,
                (s, false) => format!("{s}{m}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `q t^3 / (1 - t^2 q^2) · ∏_{i>=0} 1/(1 - q^{2^i-1} t^{2^i})`: the
/// coefficient of `q^i t^n` is the 2-rank of `H_i(Br_n; H_1(Σ_n))` for odd `n`.
pub fn series_odd_poincare(max_q: usize, max_t: usize) -> FormalSeries {
    let mut s = FormalSeries::monomial(max_q, max_t, 1, 3);
    s.mul_geometric(2, 2);
    s.mul_power_product(0, 1);
    s
}

/// `q / (1 - q^2) · ∏_{j>=1} 1/(1 - q^{2^j-1})` (only `t^0` is used).
pub fn series_stable(max_q: usize) -> FormalSeries {
    let mut s = FormalSeries::monomial(max_q, 0, 1, 0);
    s.mul_geometric(2, 0);
    s.mul_power_product(1, 0);
    s
}

/// `∏_{i>=0} 1/(1 - q^{2^i-1} t^{2^i})`: the coefficient of `q^d t^n` is
/// `dim H_d(Br_n; F_2)`.
pub fn series_braid_f2(max_q: usize, max_t: usize) -> FormalSeries {
    let mut s = FormalSeries::one(max_q, max_t);
    s.mul_power_product(0, 1);
    s
}

/// One disagreement between a series and computed ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub i: usize,
    pub n: usize,
    pub series: u64,
    pub computed: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(i={}, n={}): series {} vs computed {}", self.i, self.n, self.series, self.computed)
    }
}

/// Compares coefficients `(q^i, t^n)` against computed ranks keyed by
/// `(i, n)`. Keys beyond the truncation are reported as mismatches with
/// series value 0.
pub fn compare(series: &FormalSeries, computed: &BTreeMap<(usize, usize), u64>) -> Vec<Mismatch> {
    computed
        .iter()
        .filter_map(|(&(i, n), &c)| {
            let s = series.coefficient(i, n).and_then(ToPrimitive::to_u64).unwrap_or(0);
            (s != c).then_some(Mismatch { i, n, series: s, computed: c })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_series_examples() {
        let s = series_odd_poincare(11, 13);
        assert_eq!(s.get(1, 3), 1);
        assert_eq!(s.get(2, 5), 1);
        assert_eq!(s.get(3, 9), 2);
        let row13: Vec<u64> = (1..=11).map(|i| s.get(i, 13)).collect();
        assert_eq!(row13, vec![1, 1, 2, 3, 4, 5, 6, 6, 5, 3, 1]);
    }

    #[test]
    fn stable_series_terms() {
        let s = series_stable(11);
        let got: Vec<u64> = (0..=11).map(|i| s.get(i, 0)).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 3, 4, 5, 7, 9, 11, 14, 17]);
    }

    #[test]
    fn braid_series_examples() {
        let s = series_braid_f2(11, 12);
        for n in 0..=12 {
            assert_eq!(s.get(0, n), 1);
        }
        assert_eq!(s.get(1, 2), 1);
        assert_eq!(s.get(1, 1), 0);
    }

    #[test]
    fn truncation_is_consistent() {
        let small = series_odd_poincare(5, 7);
        let big = series_odd_poincare(9, 15);
        for ((a, b), c) in small.terms() {
            assert_eq!(big.coefficient(a, b), Some(c));
        }
    }

    #[test]
    fn compare_reports_mismatch() {
        let s = series_odd_poincare(3, 5);
        let mut computed = BTreeMap::new();
        computed.insert((1, 3), 1);
        computed.insert((2, 5), 1);
        assert!(compare(&s, &computed).is_empty());
        computed.insert((2, 5), 2);
        assert_eq!(compare(&s, &computed), vec![Mismatch { i: 2, n: 5, series: 1, computed: 2 }]);
    }
}
