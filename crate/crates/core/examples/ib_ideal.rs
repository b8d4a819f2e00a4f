//! Computes the ideal generated by the supports of the maximal minors of
//! `phi` for a classical type, e.g. `cargo run --example ib_ideal -- B 3`.

use std::time::Instant;

use lulu::phi::compute_ib;
use lulu::{build_root_datum, Family, RootSystemType};

fn main() -> lulu::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map(String::as_str).unwrap_or("A").parse()?;
    let rank: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let datum = build_root_datum(RootSystemType::new(family, rank)?)?;

    let start = Instant::now();
    let ib = compute_ib(&datum)?;
    let names = datum.variable_names();
    println!("type {family}{rank}: {} minors, {} support monomials", ib.minor_count, ib.all_support.len());
    println!("minimal generators: {}", ib.ideal.len());
    println!("codim: {}", ib.ideal.codim()?);
    println!("squarefree: {}", ib.ideal.is_squarefree());
    for g in ib.ideal.generators().iter().take(8) {
        let factors: Vec<String> = g
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        println!("  {}", factors.join("*"));
    }
    if ib.ideal.len() > 8 {
        println!("  ...");
    }
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
