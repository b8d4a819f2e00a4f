//! Samples points of `L x U x L x U`, builds the fiber ideal over their
//! product and checks membership by both routes, e.g.
//! `cargo run --release --example lulu_fiber -- 3 20`.

use std::time::Instant;

use lulu::fiber::{check_point, fiber_ideal, fiber_ideal_with, fiber_variable_names, perturb_lower, sample_fiber_instance};
use lulu::rational;

fn main() -> lulu::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let samples: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let start = Instant::now();

    let first = sample_fiber_instance(n, 0)?;
    let ideal = fiber_ideal(&first.g0)?;
    let names = fiber_variable_names(n);
    println!("g0 = {:?}", first.g0);
    for (j, f) in ideal.generators.iter().enumerate() {
        println!("f{} has {} terms, degree {}", j + 1, f.len(), f.total_degree().unwrap_or(0));
        if f.len() <= 12 {
            println!("  {}", f.display_with(&names));
        }
    }
    println!("f0 vanishes identically: {:?}", ideal.f0_identity);

    let mut ranks = vec![0usize; n + 1];
    let mut agree = 0;
    for seed in 0..samples {
        let inst = sample_fiber_instance(n, seed)?;
        let ideal = fiber_ideal_with(&inst.g0, false)?;
        let on = check_point(&ideal, &inst.l1, &inst.u1)?;
        let off = check_point(&ideal, &perturb_lower(&inst.l1, n, 0, &rational::int(1))?, &inst.u1)?;
        if on.on_fiber() && off.agree() {
            agree += 1;
        }
        ranks[ideal.jacobian_rank(&inst.coordinates())?] += 1;
    }
    println!("route agreement: {agree}/{samples}");
    println!("jacobian rank histogram: {ranks:?}");
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
