//! Ring descriptors.
//!
//! Rings are values that carry whatever context their elements need (a
//! modulus, a coefficient field) and perform arithmetic on plain element
//! values. This keeps prime-field elements as bare `u64`s.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The image of an integer under the canonical map from ℤ.
    fn from_integer(&self, n: &BigInt) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a += c * b`, the workhorse of every elimination loop.
    fn add_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.add(a, &self.mul(c, b));
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// 0 for ℚ, p for F_p.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// A Euclidean domain, which is all the Smith normal form needs.
pub trait EuclideanRing: Ring {
    /// Division with remainder; the remainder is strictly smaller than `b`
    /// under [`EuclideanRing::cmp_size`].
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Compares Euclidean sizes (absolute value, degree).
    fn cmp_size(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Returns `(u, a')` with `u` a unit and `a' = u * a` the canonical
    /// associate (positive integer, monic polynomial).
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Inverse of a unit.
    fn unit_inv(&self, u: &Self::Elem) -> Self::Elem;

    /// Nonzero Smith diagonal of a dense block, for rings with a method that
    /// beats generic elimination. Order and chaining are left to the caller.
    fn dense_block_factors(&self, _a: &[Vec<Self::Elem>]) -> Option<Vec<Self::Elem>> {
        None
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        if self.is_zero(&x) {
            x
        } else {
            self.normalize(&x).1
        }
    }

    /// Returns `(g, s, t)` with `g = s a + t b` and `g = gcd(a, b)` (not
    /// normalized).
    fn ext_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn add_mul_assign(&self, a: &mut BigInt, c: &BigInt, b: &BigInt) {
        *a += c * b;
    }
}

impl EuclideanRing for Integers {
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // Symmetric remainder keeps entries small during elimination.
        let (mut q, mut r) = a.div_mod_floor(b);
        let twice: BigInt = &r * 2;
        if twice.magnitude() > b.magnitude() {
            r -= b;
            q += 1;
        }
        (q, r)
    }

    fn cmp_size(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-BigInt::one(), -a)
        } else {
            (BigInt::one(), a.clone())
        }
    }

    fn unit_inv(&self, u: &BigInt) -> BigInt {
        u.clone()
    }

    fn dense_block_factors(&self, a: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
        Some(super::modular::block_factors(a))
    }
}

/// F_p for a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is prime; callers validate user input beforehand.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(p < (1 << 63));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn from_integer(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("reduced value fits")
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Every field is trivially Euclidean; this lets the Smith normal form code
/// double as field elimination.
macro_rules! field_is_euclidean {
    ($t:ty) => {
        impl EuclideanRing for $t {
            fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
                (self.div(a, b), self.zero())
            }
            fn cmp_size(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
                (!self.is_zero(a)).cmp(&!self.is_zero(b))
            }
            fn is_unit(&self, a: &Self::Elem) -> bool {
                !self.is_zero(a)
            }
            fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
                if self.is_zero(a) {
                    (self.one(), self.zero())
                } else {
                    (self.inv(a), self.one())
                }
            }
            fn unit_inv(&self, u: &Self::Elem) -> Self::Elem {
                self.inv(u)
            }
        }
    };
}

field_is_euclidean!(PrimeField);
field_is_euclidean!(Rationals);

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
