//! Gaussian and primed binomials, and the boundary coefficients they give
//! at `q = -1`.

use artin_homology::qcalc::{gauss_at_minus_one, gauss_binomial, primed_at_minus_one, primed_binomial, BoundaryCoefficients};

fn main() -> artin_homology::Result<()> {
    println!("[4 choose 2]_q = {}", gauss_binomial(4, 2)?);
    println!("[3 choose 1]'  = {}", primed_binomial(3, 1)?);

    println!("\nGaussian binomials at q = -1:");
    for m in 0..=8u32 {
        let row: Vec<String> = (0..=m).map(|i| gauss_at_minus_one(m, i).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        println!("  m={m}: {}", row.join(" "));
    }

    println!("\nPrimed binomials at q = -1 (coefficients of t, constant first):");
    for m in 1..=4u32 {
        for i in 0..=m {
            let c = primed_at_minus_one(m, i)?;
            println!("  ({m},{i}): {:?}", c.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
    }

    let table = BoundaryCoefficients::new(12);
    println!("\ncached [12 choose 4] at -1 = {}", table.gauss(12, 4));
    Ok(())
}
