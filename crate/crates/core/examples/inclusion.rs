//! Compares the Stanley-Reisner ideal of the nerve complex with the ideal
//! of supports of maximal minors, e.g. `cargo run --release --example inclusion -- B 3`.

use lulu::report::ideal_pair;
use lulu::{Family, RootSystemType};

fn main() -> lulu::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map(|s| s.parse()).transpose()?.unwrap_or(Family::A);
    let rank: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let p = ideal_pair(RootSystemType::new(family, rank)?)?;

    println!("SR ideal: {} generators, codim {}", p.sr.len(), p.sr.codim()?);
    println!("minor ideal: {} generators, codim {}", p.ib.ideal.len(), p.ib.ideal.codim()?);
    println!("inclusion holds: {}", p.sr.is_subset(&p.ib.ideal)?);
    println!("equal: {}", p.sr == p.ib.ideal);
    let extra = p.ib.ideal.witnesses_outside(&p.sr)?;
    println!("minor generators outside the SR ideal: {}", extra.len());
    for m in extra.iter().take(5) {
        println!("  {:?}", m.exponents());
    }
    Ok(())
}
