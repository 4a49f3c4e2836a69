//! The quick verification scope, then the same run against a corrupted
//! table to show that mismatches are reported.

use artin_homology::fixtures::{table, AbelianGroup};
use artin_homology::verify::{verify, Scope};

fn main() -> artin_homology::Result<()> {
    let report = verify(Scope::Quick, table())?;
    println!("{report}\n");

    let bad = table().with_entry(5, 2, "Z2^2".parse::<AbelianGroup>()?);
    let report = verify(Scope::Quick, &bad)?;
    println!("{report}");
    println!("\ncorrupted table passed: {}", report.passed());
    Ok(())
}
