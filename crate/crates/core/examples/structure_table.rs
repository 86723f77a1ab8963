//! Prints free rank and torsion of the structure set over a small grid.
//!
//! `cargo run --release --example structure_table`

use rho_lattice::surgery::{cap_from_env, structure_set, LensParams, MethodChoice};

fn main() -> rho_lattice::Result<()> {
    println!("N\td\trank\ttorsion\tmethod");
    for n in [2, 3, 4, 6, 8, 12, 16] {
        for d in 3..=7 {
            let s = structure_set(&LensParams::new(n, d, 1)?, MethodChoice::Auto, cap_from_env())?;
            println!("{n}\t{d}\t{}\t{:?}\t{:?}", s.free_rank, s.torsion.factors(), s.method);
        }
    }
    Ok(())
}
