//! `H_i(Br_n; H_1(Σ_n; ℤ))` from the cone pipeline, next to the shipped
//! table and the series prediction.

use artin_homology::algebra::scalar::ScalarRing;
use artin_homology::assembler::{from_fixture, predict, Pipeline};
use artin_homology::homology::HomologyOptions;

fn main() -> artin_homology::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    println!("{:>3} {:>3}  {:<14} {:<14} {}", "n", "i", "computed", "table", "predicted");
    for n in 3..=max {
        let pipeline = Pipeline::default_for(n)?;
        let rows = pipeline.homology_all(&ScalarRing::Integers, HomologyOptions::default())?;
        for r in rows.iter().skip(1) {
            let table = from_fixture(n, r.i).map(|t| t.group().map(|g| g.to_string())).transpose()?.unwrap_or_default();
            let pred = predict(n, r.i, &ScalarRing::Integers).ok().map(|p| p.group().map(|g| g.to_string())).transpose()?.unwrap_or_else(|| "-".into());
            println!("{n:>3} {:>3}  {:<14} {:<14} {pred}", r.i, r.group()?.to_string(), table);
        }
    }
    Ok(())
}
