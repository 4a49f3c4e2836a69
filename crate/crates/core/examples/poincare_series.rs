//! Expanding the generating functions and reading off 2-ranks.

use artin_homology::series::{series_braid_f2, series_odd_poincare, series_stable};

fn main() {
    let odd = series_odd_poincare(8, 15);
    println!("2-ranks of H_i(Br_n; H_1(Σ_n)) for odd n:");
    print!("   i\\n");
    for n in (3..=15).step_by(2) {
        print!("{n:>4}");
    }
    println!();
    for i in 1..=8 {
        print!("{i:>6}");
        for n in (3..=15).step_by(2) {
            print!("{:>4}", odd.get(i, n));
        }
        println!();
    }

    println!("\nstable: {}", series_stable(12));
    let f2 = series_braid_f2(6, 12);
    println!("dim H_3(Br_n; F2), n = 0..12: {:?}", (0..=12).map(|n| f2.get(3, n)).collect::<Vec<_>>());
}
