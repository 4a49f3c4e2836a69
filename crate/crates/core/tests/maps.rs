use std::sync::Arc;

use artin_homology::algebra::{PrimeField, Rationals, SparseMatrix};
use artin_homology::complexes::{build_a, CellString, Module};
use artin_homology::generators::{resolve, verify_basis, y_generator};
use artin_homology::maps::{
    agree_on_homology, induced_on_homology, juxtaposition, mu_candidate, section_model, st_a, st_b, tau, verify_chain_map,
    ChainMapCheck, SectionUnit, MU_CANDIDATES,
};
use num_bigint::BigInt;

fn rank<F: artin_homology::algebra::Field + artin_homology::algebra::EuclideanRing>(f: &F, m: &SparseMatrix<F::Elem>) -> usize {
    artin_homology::algebra::rank(f, m)
}

#[test]
fn stabilizations_are_chain_maps() {
    for n in 0..=8 {
        assert!(verify_chain_map(&st_a(n).unwrap()).is_ok(), "st_A({n})");
    }
    for n in 1..=8 {
        for m in [Module::Trivial, Module::Mod1PlusT, Module::Mod1MinusT, Module::Mod1MinusT2] {
            assert!(verify_chain_map(&st_b(n, m).unwrap()).is_ok(), "st_B({n}, {m})");
        }
        assert!(verify_chain_map(&tau(n).unwrap()).is_ok(), "tau({n})");
    }
}

#[test]
fn stabilization_moves_x1_to_x1x0() {
    let st = st_a(2).unwrap();
    let src = st.source.index_of(1, &artin_homology::complexes::Label::Cell("10".parse().unwrap())).unwrap();
    let dst = st.target.index_of(1, &artin_homology::complexes::Label::Cell("100".parse().unwrap())).unwrap();
    assert_eq!(st.apply(1, &[(src, BigInt::from(1))]), vec![(dst, BigInt::from(1))]);
    let f2 = PrimeField::new(2);
    for n in 2..=6 {
        let m = induced_on_homology(&f2, &st_a(n).unwrap(), 1).unwrap();
        assert_eq!(rank(&f2, &m.matrix), 1, "st_A({n}) on H_1");
    }
}

#[test]
fn tau_commutes_with_stabilization() {
    for n in 1..=6 {
        let lower = tau(n).unwrap().then(&st_b(n, Module::Mod1MinusT2).unwrap()).unwrap();
        let upper = st_b(n, Module::Mod1PlusT).unwrap().then(&tau(n + 1).unwrap()).unwrap();
        for i in 0..=n as isize {
            assert_eq!(lower.matrix(i), upper.matrix(i), "n={n} degree {i}");
        }
    }
}

#[test]
fn juxtaposing_x1_with_itself() {
    let one: CellString = "1".parse().unwrap();
    let prod = juxtaposition(&[(one, BigInt::from(1))], &[(one, BigInt::from(1))]);
    assert_eq!(prod, vec![("101".parse().unwrap(), BigInt::from(1))]);
    // A cycle of A(3) that is nonzero in H_2(-; F_2).
    let a3 = build_a(3).unwrap();
    let f2 = PrimeField::new(2);
    let idx = a3.index_of(2, &artin_homology::complexes::Label::Cell(prod[0].0)).unwrap();
    let r = verify_basis(&f2, &a3, 2, &[("x1^2".into(), vec![(idx, 1u64)])]);
    assert!(r.is_independent());
}

#[test]
fn section_model_units() {
    for n in 1..=6 {
        for u in [SectionUnit::One, SectionUnit::OnePlusT, SectionUnit::OneMinusT] {
            assert!(verify_chain_map(&section_model(n, u).unwrap()).is_ok(), "n={n} {u:?}");
        }
        let h0 = induced_on_homology(&Rationals, &section_model(n, SectionUnit::One).unwrap(), 0).unwrap();
        assert_eq!(rank(&Rationals, &h0.matrix), h0.matrix.cols(), "injective on H_0 for n={n}");
    }
}

#[test]
fn mu_candidates_fail_where_recorded() {
    let fails = |name: &str, n: usize| verify_chain_map(&mu_candidate(name).unwrap().build(n).unwrap());
    assert_eq!(fails("unsigned-insert", 4), ChainMapCheck::Fails { degree: 2, cell: artin_homology::complexes::Label::Cell("0|11".parse().unwrap()) });
    assert_eq!(fails("adjacent-insert", 3), ChainMapCheck::Fails { degree: 1, cell: artin_homology::complexes::Label::Cell("0|1".parse().unwrap()) });
    for n in 2..=8 {
        assert!(fails("signed-insert", n).is_ok(), "n={n}");
        assert!(fails("weight-two-insert", n).is_ok(), "n={n}");
    }
    assert_eq!(MU_CANDIDATES.len(), 5);
    assert!(mu_candidate("no-such-thing").is_err());
}

#[test]
fn mu_commutes_with_stabilization_on_homology() {
    let c = mu_candidate("signed-insert").unwrap();
    let f2 = PrimeField::new(2);
    for n in 3..=6 {
        let b = |k: usize| Arc::new(artin_homology::complexes::build_b_integral(k, Module::Mod1PlusT).unwrap());
        let (b0, b1, b2) = (b(n - 2), b(n - 1), b(n));
        let lower = c.build_between(b0.clone(), b1.clone()).unwrap().then(&artin_homology::maps::st_b_between(b1.clone(), b2.clone()).unwrap()).unwrap();
        let upper = artin_homology::maps::st_b_between(b0.clone(), b1.clone()).unwrap().then(&c.build_between(b1, b2).unwrap()).unwrap();
        for i in 0..b0.num_degrees() {
            assert!(agree_on_homology(&f2, &lower, &upper, i).unwrap(), "F2 n={n} i={i}");
            assert!(agree_on_homology(&Rationals, &lower, &upper, i).unwrap(), "Q n={n} i={i}");
        }
    }
}

/// `y = ∂(x)/p` is a cycle mod `p`, and over ℚ it is the boundary of `x/p`.
#[test]
fn y_generators_are_cycles() {
    for (p, i) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let y = y_generator(p, i).unwrap();
        let a = build_a(y.len()).unwrap();
        let index = |x: &CellString| a.index_of(y.degree() as isize, &artin_homology::complexes::Label::Cell(*x)).unwrap();
        let f = PrimeField::new(p);
        let v: Vec<(usize, u64)> = resolve(&f, &y.expr).unwrap().iter().map(|(x, c)| (index(x), c[0])).collect();
        let r = verify_basis(&f, &a, y.degree(), &[(y.name.clone(), v)]);
        assert!(r.non_cycles.is_empty(), "p={p} i={i} {r:?}");
        let q: Vec<(usize, num_rational::BigRational)> =
            resolve(&Rationals, &y.expr).unwrap().iter().map(|(x, c)| (index(x), c[0].clone())).collect();
        let r = verify_basis(&Rationals, &a, y.degree(), &[(y.name.clone(), q)]);
        assert!(r.non_cycles.is_empty() && !r.independent, "p={p} i={i} {r:?}");
    }
}
