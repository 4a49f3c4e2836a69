//! Scalar ring descriptors and the quotient ring `R[t]/(1 - t^2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ring::{is_prime, Ring};
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// The quotients of `R[t]` used as coefficient modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientModulus {
    OnePlusT,
    OneMinusT,
    OneMinusT2,
}

impl QuotientModulus {
    /// Coefficients of the modulus, constant term first.
    pub fn coefficients(self) -> Vec<i64> {
        match self {
            QuotientModulus::OnePlusT => vec![1, 1],
            QuotientModulus::OneMinusT => vec![1, -1],
            QuotientModulus::OneMinusT2 => vec![1, 0, -1],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarRing {
    Integers,
    Rationals,
    PrimeField(u64),
    PolyOverField(Box<ScalarRing>),
    LaurentOverField(Box<ScalarRing>),
    QuotientModule { base: Box<ScalarRing>, modulus: QuotientModulus },
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(ScalarRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, ScalarRing::Rationals | ScalarRing::PrimeField(_))
    }

    /// 0 for ℤ and ℚ; p for F_p; `None` for the polynomial rings.
    pub fn characteristic(&self) -> Option<u64> {
        match self {
            ScalarRing::Integers | ScalarRing::Rationals => Some(0),
            ScalarRing::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ScalarRing::Integers | ScalarRing::Rationals => Ok(()),
            ScalarRing::PrimeField(p) => Self::prime_field(*p).map(|_| ()),
            ScalarRing::PolyOverField(f) | ScalarRing::LaurentOverField(f) => {
                f.validate()?;
                if f.is_field() {
                    Ok(())
                } else {
                    Err(Error::UnsupportedRing(format!("polynomials over {f} do not form a PID")))
                }
            }
            ScalarRing::QuotientModule { base, .. } => match **base {
                ScalarRing::Integers | ScalarRing::Rationals | ScalarRing::PrimeField(_) => base.validate(),
                _ => Err(Error::UnsupportedRing(format!("quotient module over {base}"))),
            },
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Integers => write!(f, "Z"),
            ScalarRing::Rationals => write!(f, "Q"),
            ScalarRing::PrimeField(p) if [2, 3, 5].contains(p) => write!(f, "F{p}"),
            ScalarRing::PrimeField(p) => write!(f, "Fp:{p}"),
            ScalarRing::PolyOverField(b) => write!(f, "{b}[t]"),
            ScalarRing::LaurentOverField(b) => write!(f, "{b}[t,1/t]"),
            ScalarRing::QuotientModule { base, modulus } => {
                let m = match modulus {
                    QuotientModulus::OnePlusT => "1+t",
                    QuotientModulus::OneMinusT => "1-t",
                    QuotientModulus::OneMinusT2 => "1-t^2",
                };
                write!(f, "{base}[t]/({m})")
            }
        }
    }
}

/// Parses the base rings accepted on the command line: `Z`, `Q`, `F2`, `F3`,
/// `F5`, `Fp:<p>`.
impl FromStr for ScalarRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(ScalarRing::Integers),
            "Q" => Ok(ScalarRing::Rationals),
            "F2" => Ok(ScalarRing::PrimeField(2)),
            "F3" => Ok(ScalarRing::PrimeField(3)),
            "F5" => Ok(ScalarRing::PrimeField(5)),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring '{s}' (expected Z, Q, F2, F3, F5 or Fp:<p>)")))?;
                Self::prime_field(p)
            }
        }
    }
}

/// `R[t]/(1 - t^2)` with elements `a + b t` stored as `(a, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitQuotient<R> {
    base: R,
}

impl<R: Ring> SplitQuotient<R> {
    pub fn new(base: R) -> Self {
        SplitQuotient { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Reduces a polynomial (constant term first) modulo `1 - t^2`.
    pub fn reduce(&self, p: &[R::Elem]) -> (R::Elem, R::Elem) {
        let (mut a, mut b) = (self.base.zero(), self.base.zero());
        for (k, c) in p.iter().enumerate() {
            if k % 2 == 0 {
                a = self.base.add(&a, c);
            } else {
                b = self.base.add(&b, c);
            }
        }
        (a, b)
    }

    pub fn t(&self) -> (R::Elem, R::Elem) {
        (self.base.zero(), self.base.one())
    }

    /// The 2x2 matrix of multiplication by `a + b t` on the basis `{1, t}`.
    pub fn block(&self, x: &(R::Elem, R::Elem)) -> [[R::Elem; 2]; 2] {
        [[x.0.clone(), x.1.clone()], [x.1.clone(), x.0.clone()]]
    }
}

impl<R: Ring> Ring for SplitQuotient<R> {
    type Elem = (R::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.base.is_zero(&x.0) && self.base.is_zero(&x.1)
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.base.add(&x.0, &y.0), self.base.add(&x.1, &y.1))
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        (self.base.neg(&x.0), self.base.neg(&x.1))
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let r = &self.base;
        (
            r.add(&r.mul(&x.0, &y.0), &r.mul(&x.1, &y.1)),
            r.add(&r.mul(&x.0, &y.1), &r.mul(&x.1, &y.0)),
        )
    }
    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        (self.base.from_integer(n), self.base.zero())
    }
    fn format(&self, x: &Self::Elem) -> String {
        super::poly::format_poly(vec![self.base.format(&x.0), self.base.format(&x.1)])
    }
}

/// Replaces every scalar `a + b t` by the block `[[a, b], [b, a]]`. Row and
/// column `k` become `2k` (the `1` component) and `2k + 1` (the `t`
/// component).
pub fn restrict_scalars<R: Ring>(q: &SplitQuotient<R>, m: &SparseMatrix<(R::Elem, R::Elem)>) -> SparseMatrix<R::Elem> {
    let triplets = m.triplets().flat_map(|(i, j, x)| {
        let b = q.block(x);
        [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(di, dj)| (2 * i + di, 2 * j + dj, b[di][dj].clone()))
    });
    SparseMatrix::from_triplets(q.base(), 2 * m.rows(), 2 * m.cols(), triplets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;

    #[test]
    fn parse_rings() {
        assert_eq!("F2".parse::<ScalarRing>().unwrap(), ScalarRing::PrimeField(2));
        assert_eq!("Fp:7".parse::<ScalarRing>().unwrap(), ScalarRing::PrimeField(7));
        assert!(matches!("Fp:9".parse::<ScalarRing>(), Err(Error::NotPrime(9))));
        assert!("R".parse::<ScalarRing>().is_err());
        assert_eq!(ScalarRing::PrimeField(7).to_string(), "Fp:7");
    }

    #[test]
    fn laurent_over_integers_is_rejected() {
        let r = ScalarRing::LaurentOverField(Box::new(ScalarRing::Integers));
        assert!(r.validate().is_err());
    }

    #[test]
    fn blocks() {
        let q = SplitQuotient::new(Integers);
        let one_plus_t = (BigInt::from(1), BigInt::from(1));
        let m = SparseMatrix::from_triplets(&q, 1, 1, [(0, 0, one_plus_t)]);
        let r = restrict_scalars(&q, &m);
        assert_eq!(r.to_dense(&Integers), vec![vec![BigInt::from(1); 2]; 2]);
        assert_eq!(q.reduce(&[BigInt::from(1), BigInt::from(0), BigInt::from(-1)]), q.zero());
    }
}
