use artin_homology::qcalc::{gauss_at_minus_one, gauss_binomial, primed_at_minus_one, primed_binomial, q_integer, BoundaryCoefficients};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Gaussian binomial coefficients in `q` by the q-Pascal rule
/// `[m, i] = [m-1, i-1] + q^i [m-1, i]`.
fn pascal(m: usize, i: usize) -> Vec<i64> {
    if i > m {
        return vec![];
    }
    if i == 0 || i == m {
        return vec![1];
    }
    let a = pascal(m - 1, i - 1);
    let b = pascal(m - 1, i);
    let mut out = vec![0; (a.len()).max(b.len() + i)];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k + i] += c;
    }
    out
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// `[m choose i]` at `q = -1`.
fn closed_form(m: u64, i: u64) -> u64 {
    if m % 2 == 0 && i % 2 == 1 {
        0
    } else {
        binom(m / 2, i / 2)
    }
}

#[test]
fn frozen_values() {
    assert_eq!(q_integer(0).coefficient(0, 0), BigInt::from(1));
    assert_eq!(q_integer(4).at_minus_one_scalar(), BigInt::from(0));
    assert_eq!(gauss_at_minus_one(4, 2).unwrap(), BigInt::from(2));
    assert_eq!(gauss_at_minus_one(2, 1).unwrap(), BigInt::from(0));
    assert_eq!(gauss_at_minus_one(6, 2).unwrap(), BigInt::from(3));
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(primed_at_minus_one(1, 0).unwrap(), ints(&[1, 1]));
    assert_eq!(primed_at_minus_one(2, 0).unwrap(), ints(&[1, 0, -1]));
    assert!(primed_at_minus_one(2, 1).unwrap().iter().all(|c| *c == BigInt::from(0)));
    // (4 choose 2)_q = (1 + q^2)(1 + q + q^2) = 1 + q + 2q^2 + q^3 + q^4.
    let g = gauss_binomial(4, 2).unwrap();
    let coeffs: Vec<BigInt> = (0..5).map(|k| g.coefficient(k, 0)).collect();
    assert_eq!(coeffs, ints(&[1, 1, 2, 1, 1]));
}

#[test]
fn table_matches_direct_evaluation() {
    let t = BoundaryCoefficients::new(16);
    for m in 0..=16u32 {
        for i in 0..=m {
            assert_eq!(t.gauss(m as usize, i as usize), &gauss_at_minus_one(m, i).unwrap(), "gauss({m},{i})");
            let direct = primed_at_minus_one(m, i).unwrap();
            let trimmed = |v: &[BigInt]| {
                let mut v = v.to_vec();
                while v.last().is_some_and(|c| *c == BigInt::from(0)) {
                    v.pop();
                }
                v
            };
            assert_eq!(trimmed(t.primed(m as usize, i as usize)), trimmed(&direct), "primed({m},{i})");
        }
    }
}

proptest! {
    #[test]
    fn gauss_matches_pascal(m in 0usize..14, i in 0usize..14) {
        prop_assume!(i <= m);
        let g = gauss_binomial(m as u32, i as u32).unwrap();
        let expected = pascal(m, i);
        for (k, c) in expected.iter().enumerate() {
            prop_assert_eq!(g.coefficient(k as u32, 0), BigInt::from(*c));
        }
        prop_assert_eq!(g.coefficient(expected.len() as u32, 0), BigInt::from(0));
    }

    #[test]
    fn gauss_at_minus_one_closed_form(m in 0u32..40, i in 0u32..40) {
        prop_assume!(i <= m);
        prop_assert_eq!(gauss_at_minus_one(m, i).unwrap(), BigInt::from(closed_form(m as u64, i as u64)));
    }

    /// The primed binomial is `[m choose i]_q * prod_{j=i}^{m-1} (1 + t q^j)`.
    #[test]
    fn primed_factorizes(m in 0u32..12, i in 0u32..12) {
        prop_assume!(i <= m);
        let mut expected = vec![BigInt::from(closed_form(m as u64, i as u64))];
        for j in i..m {
            let s = if j % 2 == 0 { 1 } else { -1 };
            let mut next = vec![BigInt::from(0); expected.len() + 1];
            for (k, c) in expected.iter().enumerate() {
                next[k] += c;
                next[k + 1] += c * s;
            }
            expected = next;
        }
        let mut got = primed_at_minus_one(m, i).unwrap();
        got.resize(expected.len().max(got.len()), BigInt::from(0));
        expected.resize(got.len(), BigInt::from(0));
        prop_assert_eq!(got, expected);
        prop_assert!(primed_binomial(m, i).is_ok());
    }
}
