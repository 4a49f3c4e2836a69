//! Integral and mod-p homology of the braid groups from the type-A complex.

use artin_homology::algebra::scalar::ScalarRing;
use artin_homology::complexes::build_a;
use artin_homology::homology::{homology, homology_all, HomologyOptions};

fn main() -> artin_homology::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for k in 1..=n {
        let c = build_a(k)?;
        let z: Vec<String> = homology_all(&c, &ScalarRing::Integers, HomologyOptions::default())?.iter().map(ToString::to_string).collect();
        println!("H_*(Br_{}; Z) = {}", k + 1, z.join(", "));
    }
    let c = build_a(n)?;
    for p in [2, 3, 5] {
        let f = homology_all(&c, &ScalarRing::PrimeField(p), HomologyOptions::default())?;
        println!("dim H_*(Br_{}; F{p}) = {:?}", n + 1, f.iter().map(|r| r.betti).collect::<Vec<_>>());
    }

    let h = homology(&build_a(3)?, &ScalarRing::Integers, 2, HomologyOptions { with_basis: true, ..Default::default() })?;
    println!("H_2(Br_4) = {h} with representing cycle {:?}", h.basis);
    Ok(())
}
