//! Flats of the B, C, D arrangements as signed graphs.

use lulu::arrangement::{admissible_graphs, set_partitions, signed_graph_audit, unbalanced_complete};
use lulu::{Family, RootSystemType};

fn main() -> lulu::Result<()> {
    let rank: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    println!("set partitions of {rank}: {}", set_partitions(rank).len());
    for s in 1..=rank {
        let set: Vec<usize> = (0..s).collect();
        println!(
            "K_{s} unbalanced: {} edges with half edges, {} without",
            unbalanced_complete(rank, &set, true).edge_count(),
            unbalanced_complete(rank, &set, false).edge_count()
        );
    }
    for family in [Family::A, Family::B, Family::C, Family::D] {
        let Ok(t) = RootSystemType::new(family, rank) else {
            continue;
        };
        let a = signed_graph_audit(t)?;
        println!(
            "{t}: {} graphs, {} flats, same family {}, max edges {} vs dimension {}",
            admissible_graphs(t).len(),
            a.flat_count,
            a.families_equal,
            a.max_edge_count,
            a.sr_dimension
        );
    }
    Ok(())
}
