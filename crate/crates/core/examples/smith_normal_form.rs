//! Smith normal form over ℤ, over `ℚ[t]`, and with transforms.

use artin_homology::algebra::poly::Polys;
use artin_homology::algebra::{snf, snf_with_transforms, Integers, Rationals, SparseMatrix};
use num_bigint::BigInt;

fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn main() {
    let z = Integers;
    let d = ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let a = SparseMatrix::from_dense(&z, &d, 3);
    let r = snf(&z, &a);
    println!("invariant factors: {:?}", r.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>());

    let t = snf_with_transforms(&z, &a);
    println!("U A V = diag{:?}", t.diagonal.iter().map(ToString::to_string).collect::<Vec<_>>());
    let u = SparseMatrix::from_dense(&z, &t.u, 3);
    let v = SparseMatrix::from_dense(&z, &t.v, 3);
    let diag = SparseMatrix::from_triplets(&z, 3, 3, t.diagonal.iter().enumerate().map(|(i, x)| (i, i, x.clone())));
    assert_eq!(u.mul(&z, &a).mul(&z, &v), diag);

    // Over Q[t]: the Laurent boundary of B(2) in degree 2 and a made-up one.
    let p = Polys::new(Rationals);
    let m = SparseMatrix::from_triplets(
        &p,
        2,
        2,
        [(0, 0, p.from_i64s(&[1, 0, -1])), (0, 1, p.from_i64s(&[1, 1])), (1, 1, p.from_i64s(&[-1, 1]))],
    );
    let r = snf(&p, &m);
    for f in &r.invariant_factors {
        let coeffs: Vec<String> = f.iter().map(ToString::to_string).collect();
        println!("Q[t] factor, constant first: [{}]", coeffs.join(", "));
    }
}
