//! q-analogs and q,t-analogs with integer coefficients.
//!
//! Everything is computed as exact polynomials first; specialization at
//! `q = -1` happens last, since the defining quotients are 0/0 there.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::poly::Polys;
use crate::algebra::ring::{Integers, Ring};
use crate::error::{Error, Result};

/// A polynomial in `q` and `t` with integer coefficients, keyed by
/// `(q-exponent, t-exponent)`. No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QTPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl QTPoly {
    pub fn zero() -> Self {
        QTPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, q: u32, t: u32) -> Self {
        let mut p = QTPoly::zero();
        p.add_term((q, t), BigInt::from(c));
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, q: u32, t: u32) -> BigInt {
        self.terms.get(&(q, t)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &QTPoly) -> QTPoly {
        let mut out = QTPoly::zero();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &other.terms {
                out.add_term((a + d, b + e), c * f);
            }
        }
        out
    }

    /// Substitutes `q ↦ q^k`.
    pub fn q_power_substitute(&self, k: u32) -> QTPoly {
        let mut out = QTPoly::zero();
        for ((a, b), c) in &self.terms {
            out.add_term((a * k, *b), c.clone());
        }
        out
    }

    /// Exact division by a polynomial in `q` alone. Fails unless the
    /// remainder vanishes.
    pub fn div_exact_q(&self, divisor: &QTPoly) -> Result<QTPoly> {
        if divisor.terms.keys().any(|(_, t)| *t != 0) || divisor.is_zero() {
            return Err(Error::Domain("divisor must be a nonzero polynomial in q".into()));
        }
        let dmax = divisor.terms.keys().map(|k| k.0).max().expect("nonzero");
        let lead = divisor.coefficient(dmax, 0);
        let mut rem = self.clone();
        let mut quot = QTPoly::zero();
        loop {
            // Highest q-degree term among all t-degrees.
            let Some((&(qd, td), c)) = rem.terms.iter().max_by_key(|(k, _)| (k.0, k.1)) else { break };
            if qd < dmax || (c % &lead) != BigInt::zero() {
                return Err(Error::NonExactDivision(format!("remainder at q^{qd} t^{td}")));
            }
            let m = QTPoly { terms: BTreeMap::from([((qd - dmax, td), c / &lead)]) };
            rem = rem.sub(&m.mul(divisor));
            quot = quot.add(&m);
        }
        Ok(quot)
    }

    /// Sets `t = 0`.
    pub fn at_t_zero(&self) -> QTPoly {
        QTPoly { terms: self.terms.iter().filter(|(k, _)| k.1 == 0).map(|(k, c)| (*k, c.clone())).collect() }
    }

    /// Evaluates at `q = value`, leaving a polynomial in `t` (constant term
    /// first, trailing zeros trimmed).
    pub fn specialize_q(&self, value: i64) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::new();
        let v = BigInt::from(value);
        for ((a, b), c) in &self.terms {
            let b = *b as usize;
            if out.len() <= b {
                out.resize(b + 1, BigInt::zero());
            }
            out[b] += c * num_traits::pow(v.clone(), *a as usize);
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Evaluates at `q = -1`.
    pub fn at_minus_one(&self) -> Vec<BigInt> {
        self.specialize_q(-1)
    }

    /// Evaluates at `q = -1`, requiring the result to be free of `t`.
    pub fn at_minus_one_scalar(&self) -> BigInt {
        let p = self.at_minus_one();
        assert!(p.len() <= 1, "expected a polynomial in q alone");
        p.into_iter().next().unwrap_or_default()
    }
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((a, b), c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars = [("q", *a), ("t", *b)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("");
            if vars.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{vars}")?;
        }
        Ok(())
    }
}

/// `[m]_q = 1 + q + … + q^{m-1}`, with `[0]_q = 1`.
pub fn q_integer(m: u32) -> QTPoly {
    if m == 0 {
        return QTPoly::one();
    }
    (0..m).fold(QTPoly::zero(), |acc, k| acc.add(&QTPoly::monomial(1, k, 0)))
}

/// `[m]_q! = [1]_q [2]_q ⋯ [m]_q`.
pub fn q_factorial(m: u32) -> QTPoly {
    (1..=m).fold(QTPoly::one(), |acc, k| acc.mul(&q_integer(k)))
}

/// `[2m]_{q,t} = [m]_q (1 + t q^{m-1})`.
pub fn qt_even_integer(m: u32) -> QTPoly {
    assert!(m >= 1);
    q_integer(m).mul(&one_plus_tq(m - 1))
}

/// `[2m]_{q,t}!! = [m]_q! ∏_{i<m} (1 + t q^i)`.
pub fn qt_double_factorial(m: u32) -> QTPoly {
    (1..=m).fold(QTPoly::one(), |acc, k| acc.mul(&qt_even_integer(k)))
}

fn one_plus_tq(j: u32) -> QTPoly {
    QTPoly::one().add(&QTPoly::monomial(1, j, 1))
}

/// Gaussian binomial by the recurrence `[m,i] = [m-1,i-1] + q^i [m-1,i]`.
pub fn gauss_binomial(m: u32, i: u32) -> Result<QTPoly> {
    if i > m {
        return Err(Error::Domain(format!("Gaussian binomial ({m}, {i}) needs i <= m")));
    }
    let mut row = vec![QTPoly::one()];
    for k in 1..=m {
        let mut next = vec![QTPoly::one(); k as usize + 1];
        for j in 1..k as usize {
            next[j] = row[j - 1].add(&QTPoly::monomial(1, j as u32, 0).mul(&row[j]));
        }
        row = next;
    }
    Ok(row.swap_remove(i as usize))
}

/// `[m,i]_q ∏_{j=i}^{m-1} (1 + t q^j)`.
pub fn primed_binomial(m: u32, i: u32) -> Result<QTPoly> {
    let g = gauss_binomial(m, i)?;
    Ok((i..m).fold(g, |acc, j| acc.mul(&one_plus_tq(j))))
}

/// Gaussian binomial at `q = -1`.
pub fn gauss_at_minus_one(m: u32, i: u32) -> Result<BigInt> {
    Ok(gauss_binomial(m, i)?.at_minus_one_scalar())
}

/// Primed binomial at `q = -1`, as a polynomial in `t`.
pub fn primed_at_minus_one(m: u32, i: u32) -> Result<Vec<BigInt>> {
    Ok(primed_binomial(m, i)?.at_minus_one())
}

/// Tables of the specialized coefficients up to a fixed length, so complex
/// construction never recomputes them.
#[derive(Clone, Debug)]
pub struct BoundaryCoefficients {
    gauss: Vec<Vec<BigInt>>,
    primed: Vec<Vec<Vec<BigInt>>>,
}

impl BoundaryCoefficients {
    /// Walks the Pascal triangle once; the primed values use that
    /// specialization is a ring map, so `(1 + t q^j)` becomes `1 ± t`.
    pub fn new(max_m: u32) -> Self {
        let mut gauss: Vec<Vec<BigInt>> = Vec::new();
        let mut row = vec![QTPoly::one()];
        for m in 0..=max_m {
            if m > 0 {
                let mut next = vec![QTPoly::one(); m as usize + 1];
                for j in 1..m as usize {
                    next[j] = row[j - 1].add(&QTPoly::monomial(1, j as u32, 0).mul(&row[j]));
                }
                row = next;
            }
            gauss.push(row.iter().map(QTPoly::at_minus_one_scalar).collect());
        }
        let zt = Polys::new(Integers);
        let primed = gauss
            .iter()
            .enumerate()
            .map(|(m, g)| {
                g.iter()
                    .enumerate()
                    .map(|(i, c)| {
                        (i..m).fold(zt.constant(c.clone()), |acc, j| {
                            let sign = if j % 2 == 0 { 1 } else { -1 };
                            zt.mul(&acc, &zt.from_i64s(&[1, sign]))
                        })
                    })
                    .collect()
            })
            .collect();
        BoundaryCoefficients { gauss, primed }
    }

    pub fn gauss(&self, m: usize, i: usize) -> &BigInt {
        &self.gauss[m][i]
    }

    pub fn primed(&self, m: usize, i: usize) -> &[BigInt] {
        &self.primed[m][i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(0), QTPoly::one());
        assert_eq!(q_integer(3).to_string(), "1 + q + q^2");
        assert_eq!(q_integer(4).at_minus_one(), Vec::<BigInt>::new());
    }

    #[test]
    fn gauss_four_two() {
        let g = gauss_binomial(4, 2).unwrap();
        let expected = QTPoly::one().add(&QTPoly::monomial(1, 2, 0)).mul(&q_integer(3));
        assert_eq!(g, expected);
        assert_eq!(gauss_at_minus_one(4, 2).unwrap(), BigInt::from(2));
        assert_eq!(gauss_at_minus_one(2, 1).unwrap(), BigInt::from(0));
        assert_eq!(gauss_at_minus_one(6, 2).unwrap(), BigInt::from(3));
        assert!(gauss_binomial(2, 3).is_err());
    }

    #[test]
    fn primed_values() {
        assert_eq!(primed_at_minus_one(1, 0).unwrap(), ints(&[1, 1]));
        assert_eq!(primed_at_minus_one(2, 0).unwrap(), ints(&[1, 0, -1]));
        assert_eq!(primed_at_minus_one(2, 1).unwrap(), ints(&[]));
    }

    #[test]
    fn double_factorial_quotient_matches_primed() {
        for m in 0..7 {
            for i in 0..=m {
                let num = qt_double_factorial(m);
                let den = qt_double_factorial(i);
                // Divide by the t-free part first, then by the (1 + t q^j) factors.
                let by_fact = num.div_exact_q(&q_factorial(m - i)).unwrap();
                let mut quotient = by_fact;
                let den_q = q_factorial(i);
                quotient = quotient.div_exact_q(&den_q).unwrap();
                let extra = (0..i).fold(QTPoly::one(), |acc, j| acc.mul(&one_plus_tq(j)));
                assert_eq!(quotient, primed_binomial(m, i).unwrap().mul(&extra), "({m},{i})");
                assert_eq!(den, den_q.mul(&extra));
            }
        }
    }

    #[test]
    fn cached_tables_agree_with_direct_computation() {
        let t = BoundaryCoefficients::new(12);
        for m in 0..=12 {
            for i in 0..=m {
                assert_eq!(t.gauss(m as usize, i as usize), &gauss_at_minus_one(m, i).unwrap());
                assert_eq!(t.primed(m as usize, i as usize), primed_at_minus_one(m, i).unwrap().as_slice());
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(QTPoly::monomial(-2, 1, 1).to_string(), "-2qt");
        assert_eq!(QTPoly::zero().to_string(), "0");
    }
}
