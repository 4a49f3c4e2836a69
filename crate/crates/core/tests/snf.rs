mod common;

use artin_homology::algebra::linalg::{rank_mod_p, rank_over_q};
use artin_homology::algebra::modular::{block_factors, rank_and_minor};
use artin_homology::algebra::poly::Polys;
use artin_homology::algebra::snf::smith_chain;
use artin_homology::algebra::{snf, snf_with_transforms, Integers, Rationals, SparseMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn matrix() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
            .prop_map(|rows| rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect())
    })
}

fn sparse(d: &[Vec<BigInt>]) -> SparseMatrix<BigInt> {
    SparseMatrix::from_dense(&Integers, d, d[0].len())
}

#[test]
fn frozen_examples() {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let d = vec![ints(&[2, 4]), ints(&[6, 8])];
    assert_eq!(snf(&Integers, &sparse(&d)).invariant_factors, ints(&[2, 4]));
    let p = Polys::new(Rationals);
    let a = SparseMatrix::from_triplets(&p, 2, 2, [(0, 0, p.from_i64s(&[1, 1])), (1, 1, p.from_i64s(&[1, 0, -1]))]);
    // (1+t) divides (1-t^2), so the diagonal is already a chain (up to units).
    assert_eq!(snf(&p, &a).invariant_factors, vec![p.from_i64s(&[1, 1]), p.from_i64s(&[-1, 0, 1])]);
}

#[test]
fn transforms_of_empty_shapes() {
    for (rows, cols) in [(0, 0), (0, 3), (2, 0)] {
        let t = snf_with_transforms(&Integers, &SparseMatrix::zero(rows, cols));
        assert_eq!((t.u.len(), t.v.len(), t.rank), (rows, cols, 0));
    }
}

#[test]
fn seeded_random_against_dense() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let d = common::random_matrix(&mut rng, 40, 9);
        let r = snf(&Integers, &sparse(&d));
        assert_eq!((r.rank, r.nonunit_factors(&Integers)), common::dense_snf(&d), "{d:?}");
    }
}

proptest! {
    #[test]
    fn sparse_matches_dense(d in matrix()) {
        let r = snf(&Integers, &sparse(&d));
        prop_assert_eq!((r.rank, r.nonunit_factors(&Integers)), common::dense_snf(&d));
    }

    #[test]
    fn modular_block_matches_dense(d in matrix()) {
        let (rank, minor) = rank_and_minor(&d);
        let (r, factors) = common::dense_snf(&d);
        prop_assert_eq!(rank, r);
        prop_assert!(!minor.is_zero());
        let chained = smith_chain(&Integers, block_factors(&d));
        prop_assert_eq!(chained.len(), r);
        let nonunit: Vec<BigInt> = chained.into_iter().filter(|x| *x != BigInt::from(1)).collect();
        prop_assert_eq!(nonunit, factors);
    }

    #[test]
    fn transforms_recompose(d in matrix()) {
        let z = Integers;
        let a = sparse(&d);
        let t = snf_with_transforms(&z, &a);
        let (rows, cols) = (d.len(), d[0].len());
        let u = SparseMatrix::from_dense(&z, &t.u, rows);
        let v = SparseMatrix::from_dense(&z, &t.v, cols);
        let diag = SparseMatrix::from_triplets(&z, rows, cols, t.diagonal.iter().enumerate().map(|(i, x)| (i, i, x.clone())));
        prop_assert_eq!(u.mul(&z, &a).mul(&z, &v), diag);
        prop_assert_eq!(u.mul(&z, &SparseMatrix::from_dense(&z, &t.u_inv, rows)), SparseMatrix::identity(&z, rows));
        prop_assert_eq!(v.mul(&z, &SparseMatrix::from_dense(&z, &t.v_inv, cols)), SparseMatrix::identity(&z, cols));
        for w in t.diagonal[..t.rank].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(t.rank, snf(&z, &a).rank);
    }

    /// Rank over ℚ equals rank over F_p unless p divides an invariant factor.
    #[test]
    fn field_ranks_follow_invariant_factors(d in matrix()) {
        let a = sparse(&d);
        let r = snf(&Integers, &a);
        prop_assert_eq!(rank_over_q(&a, true), r.rank);
        prop_assert_eq!(rank_over_q(&a, false), r.rank);
        for p in [2u64, 3, 5, 7] {
            let divisible = r.invariant_factors.iter().filter(|f| (*f % BigInt::from(p)).is_zero()).count();
            prop_assert_eq!(rank_mod_p(&a, p), r.rank - divisible);
        }
    }
}
