//! Stanley-Reisner dimension and codimension of the Coxeter nerve complex
//! against the closed forms, for every classical type up to a rank bound.

use lulu::arrangement::table1_row;
use lulu::{Family, RootSystemType};

fn main() -> lulu::Result<()> {
    let max_rank: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    println!("{:<5} {:>4} {:>5} {:>6} {:>9} {:>10}", "type", "D", "dim", "codim", "expected", "");
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in 2..=max_rank {
            let Ok(t) = RootSystemType::new(family, rank) else {
                continue;
            };
            let row = table1_row(t)?;
            println!(
                "{:<5} {:>4} {:>5} {:>6} {:>9} {:>10}",
                row.ty,
                row.num_hyperplanes,
                row.dim,
                row.codim,
                format!("{}/{}", row.expected_dim, row.expected_codim),
                if row.matches { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
