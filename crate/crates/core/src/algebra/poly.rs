//! Univariate polynomials in `t` over a coefficient ring.
//!
//! Elements are coefficient vectors, constant term first, with no trailing
//! zeros; the zero polynomial is the empty vector.

use std::cmp::Ordering;

use num_bigint::BigInt;

use super::ring::{EuclideanRing, Field, Ring};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polys<R> {
    base: R,
}

impl<R: Ring> Polys<R> {
    pub fn new(base: R) -> Self {
        Polys { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn trim(&self, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
        while p.last().is_some_and(|c| self.base.is_zero(c)) {
            p.pop();
        }
        p
    }

    pub fn degree(&self, p: &[R::Elem]) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.trim(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> Vec<R::Elem> {
        if self.base.is_zero(&c) {
            return Vec::new();
        }
        let mut p = vec![self.base.zero(); k];
        p.push(c);
        p
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> Vec<R::Elem> {
        self.trim(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn eval(&self, p: &[R::Elem], x: &R::Elem) -> R::Elem {
        p.iter().rev().fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn scale(&self, c: &R::Elem, p: &[R::Elem]) -> Vec<R::Elem> {
        self.trim(p.iter().map(|a| self.base.mul(c, a)).collect())
    }

    /// Splits off the largest power of `t` dividing `p`; returns `(k, p / t^k)`.
    pub fn strip_t_power(&self, p: &[R::Elem]) -> (usize, Vec<R::Elem>) {
        let k = p.iter().take_while(|c| self.base.is_zero(c)).count();
        (k.min(p.len()), p[k.min(p.len())..].to_vec())
    }

    /// Maps coefficients into another ring.
    pub fn map_coeffs<S: Ring>(&self, target: &Polys<S>, p: &[R::Elem], f: impl Fn(&R::Elem) -> S::Elem) -> Vec<S::Elem> {
        target.trim(p.iter().map(f).collect())
    }

    pub fn pow(&self, p: &[R::Elem], e: u32) -> Vec<R::Elem> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, &p.to_vec()))
    }
}

impl<R: Ring> Ring for Polys<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }

    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let z = self.base.zero();
        let s = (0..n)
            .map(|k| self.base.add(a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z)))
            .collect();
        self.trim(s)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base.neg(c)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                self.base.add_mul_assign(&mut out[i + j], x, y);
            }
        }
        self.trim(out)
    }

    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_integer(n))
    }

    fn format(&self, a: &Self::Elem) -> String {
        format_poly(a.iter().map(|c| self.base.format(c)).collect())
    }
}

impl<F: Field> EuclideanRing for Polys<F> {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let f = &self.base;
        let db = b.len() - 1;
        let lead_inv = f.inv(&b[db]);
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![f.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + db], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let prod = f.mul(&c, bj);
                r[k + j] = f.sub(&r[k + j], &prod);
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    fn cmp_size(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.len().cmp(&b.len())
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1
    }

    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        match a.last() {
            None => (self.one(), Vec::new()),
            Some(lead) => {
                let u = self.base.inv(lead);
                (vec![u.clone()], self.scale(&u, a))
            }
        }
    }

    fn unit_inv(&self, u: &Self::Elem) -> Self::Elem {
        vec![self.base.inv(&u[0])]
    }
}

/// Renders coefficient strings (constant first) as `1 + 2t - t^2`.
pub fn format_poly(coeffs: Vec<String>) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c.clone()),
        };
        let needs_parens = mag.contains('/') && k > 0;
        let body = match (k, mag.as_str()) {
            (0, _) => mag.clone(),
            (_, "1") => String::new(),
            _ if needs_parens => format!("({mag})"),
            _ => mag.clone(),
        };
        let var = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
        out.push_str(&var);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{PrimeField, Rationals};

    #[test]
    fn division_with_remainder() {
        let r = Polys::new(Rationals);
        let a = r.from_i64s(&[1, 0, -1]);
        let b = r.from_i64s(&[1, 1]);
        let (q, rem) = r.div_rem(&a, &b);
        assert_eq!(q, r.from_i64s(&[1, -1]));
        assert!(rem.is_empty());
        let (_, rem) = r.div_rem(&r.from_i64s(&[2, 0, 1]), &b);
        assert_eq!(rem, r.from_i64s(&[3]));
    }

    #[test]
    fn gcd_over_f2() {
        let r = Polys::new(PrimeField::new(2));
        let a = r.from_i64s(&[1, 0, 1]);
        let b = r.from_i64s(&[1, 1]);
        assert_eq!(r.gcd(&a, &b), b);
    }

    #[test]
    fn formatting() {
        let r = Polys::new(Rationals);
        assert_eq!(r.format(&r.from_i64s(&[1, 0, -1])), "1 - t^2");
        assert_eq!(r.format(&r.from_i64s(&[0, -1, 2])), "-t + 2t^2");
        assert_eq!(r.format(&Vec::new()), "0");
    }

    #[test]
    fn strip_powers_of_t() {
        let r = Polys::new(Rationals);
        let (k, p) = r.strip_t_power(&r.from_i64s(&[0, 0, 1, 1]));
        assert_eq!(k, 2);
        assert_eq!(p, r.from_i64s(&[1, 1]));
    }
}
