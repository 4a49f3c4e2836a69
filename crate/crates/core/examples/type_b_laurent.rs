//! Type-B homology with Laurent coefficients and its rank-one quotients.

use artin_homology::algebra::scalar::ScalarRing;
use artin_homology::complexes::{build_b_integral, build_b_laurent, Module};
use artin_homology::homology::{homology_all, homology_over_laurent_all, HomologyOptions};

fn main() -> artin_homology::Result<()> {
    for n in 1..=6 {
        let c = build_b_laurent(n)?;
        for ring in [ScalarRing::Rationals, ScalarRing::PrimeField(2)] {
            let h = homology_over_laurent_all(&c, &ring)?;
            println!("B({n}) over {ring}[t^±1]: {}", h.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
        }
    }

    println!();
    for m in [Module::Mod1PlusT, Module::Mod1MinusT, Module::Mod1MinusT2] {
        let h = homology_all(&build_b_integral(5, m)?, &ScalarRing::Integers, HomologyOptions::default())?;
        println!("B(5) over Z, {m}: {}", h.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    }
    Ok(())
}
