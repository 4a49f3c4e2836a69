//! Stabilization, `τ`, the section model and the `μ` candidates, checked
//! as chain maps and compared on homology.

use artin_homology::algebra::{PrimeField, Rationals};
use artin_homology::complexes::Module;
use artin_homology::maps::{induced_on_homology, section_model, st_a, st_b, tau, verify_chain_map, SectionUnit, MU_CANDIDATES};

fn main() -> artin_homology::Result<()> {
    let f2 = PrimeField::new(2);
    for n in 2..=5 {
        let st = st_a(n)?;
        let ranks: Vec<usize> = (0..=n)
            .map(|i| induced_on_homology(&f2, &st, i).map(|m| artin_homology::algebra::rank(&f2, &m.matrix)))
            .collect::<Result<_, _>>()?;
        println!("st_A({n}): {:?}, ranks on H_*(-; F2) {ranks:?}", verify_chain_map(&st));
    }

    for n in 1..=4 {
        println!(
            "st_B({n}, 1-t2): {:?}   tau({n}): {:?}   s({n}): {:?}",
            verify_chain_map(&st_b(n, Module::Mod1MinusT2)?),
            verify_chain_map(&tau(n)?),
            verify_chain_map(&section_model(n, SectionUnit::One)?),
        );
    }

    println!();
    for c in MU_CANDIDATES {
        let checks: Vec<String> = (2..=6).map(|n| c.build(n).map(|m| format!("{:?}", verify_chain_map(&m)))).collect::<Result<_, _>>()?;
        println!("{:<18} {}", c.name, checks.join(" "));
    }

    let s = section_model(4, SectionUnit::One)?;
    let h0 = induced_on_homology(&Rationals, &s, 0)?;
    println!("\ns(4) on H_0 over Q: {} x {}, bases {}", h0.matrix.rows(), h0.matrix.cols(), h0.basis_hash);
    Ok(())
}
