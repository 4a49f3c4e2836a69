//! Explicit homology generators of the type-B complex, checked as bases.

use artin_homology::algebra::{PrimeField, Rationals};
use artin_homology::complexes::build_b_laurent;
use artin_homology::generators::{mod2_generators, rational_generators, verify_laurent_torsion, y_generator, Generator};

fn by_degree(n: usize, gens: Vec<Generator>) -> Vec<Vec<Generator>> {
    let mut out = vec![Vec::new(); n + 1];
    for g in gens {
        out[g.degree()].push(g);
    }
    out
}

fn main() -> artin_homology::Result<()> {
    for n in 1..=6 {
        let c = build_b_laurent(n)?;
        let q = by_degree(n, rational_generators(n)?);
        let f2 = by_degree(n, mod2_generators(n)?);
        for i in 0..=n {
            if q[i].is_empty() && f2[i].is_empty() {
                continue;
            }
            let rq = verify_laurent_torsion(&Rationals, &c, i, &q[i])?;
            let r2 = verify_laurent_torsion(&PrimeField::new(2), &c, i, &f2[i])?;
            let names = |g: &[Generator]| g.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(", ");
            println!("B({n}) H_{i}: Q basis {} [{}]; F2 basis {} [{}]", rq.is_basis(), names(&q[i]), r2.is_basis(), names(&f2[i]));
        }
    }

    let y = y_generator(3, 1)?;
    println!("\n{} = {:?} in degree {}", y.name, y.expr, y.degree());
    Ok(())
}
