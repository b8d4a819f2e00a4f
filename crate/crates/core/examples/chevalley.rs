//! Matrix realization of a classical Lie algebra: Chevalley triples,
//! one-parameter subgroups and the Cartan projection, e.g.
//! `cargo run --example chevalley -- C 2`.

use lulu::roots::{bracket, one_param};
use lulu::{build_root_datum, rational, Family, Polynomial, RootSystemType};

fn main() -> lulu::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map(|s| s.parse()).transpose()?.unwrap_or(Family::B);
    let rank: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let datum = build_root_datum(RootSystemType::new(family, rank)?)?;

    println!("{} in dimension {}", datum.root_type(), datum.matrix_dim());
    let (solutions, span) = datum.dimension_check();
    println!("algebra dimension {solutions}, spanned by the basis: {span}");
    for (i, root) in datum.positive_roots().iter().enumerate() {
        let h = bracket(datum.x(i), datum.y(i))?;
        let ok = &h == datum.h(i) && datum.pairing(root, &h) == rational::int(2);
        let coords: Vec<String> = datum.coroot_coordinates(i).iter().map(|q| q.to_string()).collect();
        println!("{:<8} coroot coordinates [{}] triple ok: {ok}", root.label(), coords.join(", "));
    }
    let last = datum.positive_roots().last().expect("nonempty root system").clone();
    let t = Polynomial::var(1, 0);
    let names = vec!["t".to_string()];
    let g = one_param(&datum, &last, &t)?;
    println!("exp(t X) for {} =", last.label());
    let m = g.cols();
    for r in 0..g.rows() {
        let row: Vec<String> = g.entries()[r * m..(r + 1) * m]
            .iter()
            .map(|p| p.display_with(&names).to_string())
            .collect();
        println!("  [{}]", row.join(", "));
    }
    Ok(())
}
