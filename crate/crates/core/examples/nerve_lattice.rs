//! Intersection lattice of a Coxeter arrangement, its nerve complex and
//! the minimal non-faces, e.g. `cargo run --example nerve_lattice -- A 3`.

use lulu::arrangement::{coxeter_arrangement, flats, nerve_from_flats, spanning_sets, sr_codim, sr_dimension};
use lulu::{Family, RootSystemType};

fn main() -> lulu::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map(|s| s.parse()).transpose()?.unwrap_or(Family::A);
    let rank: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let arr = coxeter_arrangement(RootSystemType::new(family, rank)?);

    let fl = flats(&arr)?;
    println!("{} hyperplanes, {} proper flats", arr.len(), fl.len());
    for r in 1..rank {
        println!("  rank {r}: {}", fl.iter().filter(|f| f.rank == r).count());
    }
    let c = nerve_from_flats(arr.len(), &fl);
    println!("facet sizes {:?}", c.facet_size_histogram());
    println!("dimension {} codimension {}", sr_dimension(&c), sr_codim(&arr, &c));
    let mut non_faces = c.minimal_non_faces();
    non_faces.sort();
    let mut spanning = spanning_sets(&arr);
    spanning.sort();
    println!("{} minimal non-faces, equal to the spanning sets: {}", non_faces.len(), non_faces == spanning);
    Ok(())
}
