//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when a criterion fails without a pinned explanation.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lulu::arrangement::{
    coxeter_arrangement, flats, nerve, signed_graph_audit, sr_codim, sr_dimension, sr_ideal, unbalanced_complete,
};
use lulu::fiber::{check_point, fiber_ideal_with, perturb_lower, sample_fiber_instance};
use lulu::phi::{compute_ib, compute_ib_from, linear_part_holds, phi_matrix, phi_matrix_with, verify_linear_part, PhiOptions};
use lulu::{build_root_datum, rational, CartanBasis, Family, PolyMatrix, Polynomial, QMatrix, Rational, RootSystemType};

type Outcome = lulu::Result<Verdict>;
type Criterion = (&'static str, fn() -> Outcome);

struct Verdict {
    passed: bool,
    detail: String,
    /// A failure whose cause is pinned down exactly by the criterion itself.
    explained: bool,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Ok(Verdict {
        passed: true,
        detail: detail.into(),
        explained: false,
    })
}

fn verdict(passed: bool, detail: impl Into<String>) -> Outcome {
    Ok(Verdict {
        passed,
        detail: detail.into(),
        explained: false,
    })
}

fn ty(f: Family, n: usize) -> RootSystemType {
    RootSystemType::new(f, n).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension and codimension from the table of closed forms.
fn closed_form(t: RootSystemType) -> (usize, usize) {
    let n = t.rank();
    match t.family() {
        Family::A => (binom(n, 2), n),
        Family::B | Family::C => ((n - 1) * (n - 1), 2 * n - 1),
        Family::D => (2 * binom(n - 1, 2), 2 * (n - 1)),
    }
}

fn computed_dims(t: RootSystemType) -> lulu::Result<(usize, usize)> {
    let arr = coxeter_arrangement(t);
    let c = nerve(&arr)?;
    Ok((sr_dimension(&c), sr_codim(&arr, &c)))
}

fn criterion_1() -> Outcome {
    let mut cases = Vec::new();
    cases.extend((2..=6).map(|n| ty(Family::A, n)));
    cases.extend((2..=5).map(|n| ty(Family::B, n)));
    cases.extend((2..=5).map(|n| ty(Family::C, n)));
    cases.extend((3..=5).map(|n| ty(Family::D, n)));
    let mut mismatches = Vec::new();
    for &t in &cases {
        let got = computed_dims(t)?;
        let want = closed_form(t);
        if got != want {
            mismatches.push((t, got, want));
        }
    }
    if mismatches.is_empty() {
        return pass(format!("{} types match", cases.len()));
    }
    let listed: Vec<String> = mismatches
        .iter()
        .map(|(t, g, w)| format!("{t} computed dim {} codim {}, closed form {} and {}", g.0, g.1, w.0, w.1))
        .collect();
    // D3 and A3 are the same root system, so their nerve complexes agree
    let a3 = computed_dims(ty(Family::A, 3))?;
    let only_d3 = mismatches.len() == 1
        && mismatches[0].0 == ty(Family::D, 3)
        && mismatches[0].1 == a3
        && a3 == closed_form(ty(Family::A, 3));
    Ok(Verdict {
        passed: false,
        detail: format!(
            "{} of {} match; {}{}",
            cases.len() - mismatches.len(),
            cases.len(),
            listed.join("; "),
            if only_d3 {
                "; D3 equals the A3 computation, which matches its own closed form, so the D_n closed form \
                 does not hold at n = 3"
            } else {
                ""
            }
        ),
        explained: only_d3,
    })
}

fn criterion_2() -> Outcome {
    let arr = coxeter_arrangement(ty(Family::A, 3));
    let fl = flats(&arr)?;
    let c = nerve(&arr)?;
    let hist = c.facet_size_histogram();
    let want: BTreeMap<usize, usize> = [(2, 3), (3, 4)].into_iter().collect();
    verdict(
        fl.len() == 13 && hist == want,
        format!("{} interior flats, facet sizes {hist:?}", fl.len()),
    )
}

fn criterion_3() -> Outcome {
    let mut got = Vec::new();
    for n in 2..=5 {
        got.push(sr_ideal(ty(Family::A, n))?.len());
    }
    verdict(got == [3, 16, 125, 1296], format!("counts {got:?}"))
}

fn criterion_4() -> Outcome {
    let cases = [
        ty(Family::A, 2),
        ty(Family::A, 3),
        ty(Family::A, 4),
        ty(Family::B, 2),
        ty(Family::B, 3),
        ty(Family::C, 2),
        ty(Family::C, 3),
        ty(Family::D, 3),
        ty(Family::D, 4),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for t in cases {
        let sr = sr_ideal(t)?;
        let ib = compute_ib(&build_root_datum(t)?)?;
        let inside = sr.is_subset(&ib.ideal)?;
        ok &= inside;
        parts.push(format!("{t} {}/{}{}", sr.len(), ib.ideal.len(), if inside { "" } else { " FAILS" }));
    }
    verdict(ok, format!("generator counts SR/minors: {}", parts.join(", ")))
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let t = ty(Family::A, n);
        let sr = sr_ideal(t)?;
        let ib = compute_ib(&build_root_datum(t)?)?.ideal;
        let shape = ib.generators().iter().all(|g| g.is_squarefree() && g.degree() as usize == n);
        ok &= sr == ib && shape;
        parts.push(format!("{t} equal {} squarefree degree {n} {shape}", sr == ib));
    }
    verdict(ok, parts.join(", "))
}

fn criterion_6() -> Outcome {
    let mut types = Vec::new();
    for n in 2..=4 {
        types.push(ty(Family::A, n));
        types.push(ty(Family::B, n));
        types.push(ty(Family::C, n));
    }
    types.push(ty(Family::D, 3));
    types.push(ty(Family::D, 4));
    let mut holds = true;
    let mut control = true;
    for &t in &types {
        let datum = build_root_datum(t)?;
        holds &= verify_linear_part(&datum)?;
        let phi = phi_matrix(&datum)?;
        let d = datum.positive_roots().len();
        // a stray linear term in another variable
        let stray = Polynomial::var(d, 1);
        control &= !linear_part_holds(&phi.perturbed(0, 0, &stray)?);
    }
    verdict(
        holds && control,
        format!("{} types hold {holds}, perturbation detected {control}", types.len()),
    )
}

/// Explicit signed sum over increasing chains `i < k1 < ... < j`.
fn chain_sum_entry(d: usize, index: &[(usize, usize)], i: usize, j: usize) -> Polynomial {
    if i == j {
        return Polynomial::one(d);
    }
    let var = |a: usize, b: usize| Polynomial::var(d, index.iter().position(|&p| p == (a, b)).unwrap());
    let inner: Vec<usize> = (i + 1..j).collect();
    let mut total = Polynomial::zero(d);
    for mask in 0u32..(1 << inner.len()) {
        let mut chain = vec![i];
        chain.extend(inner.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &k)| k));
        chain.push(j);
        let mut term = Polynomial::one(d);
        for w in chain.windows(2) {
            term = &term * &var(w[0], w[1]);
        }
        if (chain.len() - 1) % 2 == 1 {
            term = term.scale(&rational::int(-1));
        }
        total = &total + &term;
    }
    total
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    for n in 1..=5 {
        let index: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let d = index.len().max(1);
        let u = PolyMatrix::from_fn(n, n, d, |i, j| {
            if i == j {
                Polynomial::one(d)
            } else if let Some(k) = index.iter().position(|&p| p == (i, j)) {
                Polynomial::var(d, k)
            } else {
                Polynomial::zero(d)
            }
        })?;
        let neumann = u.invert_unitriangular()?;
        let paths = u.path_sum_inverse()?;
        for i in 0..n {
            for j in 0..n {
                let e = &neumann.entries()[i * n + j];
                let want = if i <= j { chain_sum_entry(d, &index, i, j) } else { Polynomial::zero(d) };
                ok &= *e == want && paths.entries()[i * n + j] == want;
            }
        }
    }
    verdict(ok, "Neumann series, chain sum and path-sum routine agree entrywise for n = 1..5")
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let mut f0_ok = true;
    for n in 1..=3 {
        for seed in 0..10 {
            let inst = sample_fiber_instance(n, 1000 + seed)?;
            f0_ok &= fiber_ideal_with(&inst.g0, true)?.f0_identity == Some(true);
        }
    }
    ok &= f0_ok;
    notes.push(format!("f0 identically zero for n = 1..3 on 10 base points each: {f0_ok}"));

    for n in 1..=4 {
        let mut agree = 0;
        let mut left = 0;
        for seed in 0..1000u64 {
            let inst = sample_fiber_instance(n, seed)?;
            let ideal = fiber_ideal_with(&inst.g0, false)?;
            let on = check_point(&ideal, &inst.l1, &inst.u1)?;
            let col = (seed % n as u64) as usize;
            let bad = perturb_lower(&inst.l1, n, col, &rational::int(1))?;
            let off = check_point(&ideal, &bad, &inst.u1)?;
            if on.on_fiber() && off.agree() {
                agree += 1;
            }
            if !off.ul_route {
                left += 1;
            }
        }
        ok &= agree == 1000;
        notes.push(format!("n = {n}: {agree}/1000 agree, {left} perturbed points off the fiber"));
    }

    for n in 2..=3 {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for seed in 0..100u64 {
            let inst = sample_fiber_instance(n, 5000 + seed)?;
            let ideal = fiber_ideal_with(&inst.g0, false)?;
            *hist.entry(ideal.jacobian_rank(&inst.coordinates())?).or_insert(0) += 1;
        }
        let full = hist.get(&n).copied().unwrap_or(0);
        let bounded = hist.keys().all(|&r| r <= n);
        ok &= full >= 95 && bounded;
        notes.push(format!("n = {n}: Jacobian ranks {hist:?}"));
    }
    verdict(ok, notes.join("; "))
}

fn random_basis(datum: &lulu::RootDatum, rng: &mut ChaCha8Rng) -> CartanBasis {
    let n = datum.rank();
    loop {
        let coeffs: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let mats: Vec<QMatrix> = coeffs
            .iter()
            .map(|row| {
                let mut acc = datum.h_basis()[0].scale(&rational::zero());
                for (c, h) in row.iter().zip(datum.h_basis()) {
                    acc = acc.try_add(&h.scale(&rational::int(*c)), false).unwrap();
                }
                acc
            })
            .collect();
        if let Ok(b) = CartanBasis::from_diagonals(datum, mats) {
            return b;
        }
    }
}

fn random_scales(d: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..d)
        .map(|_| {
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-5..=5);
            }
            rational::frac(num, rng.gen_range(1..=5))
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut runs = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in [ty(Family::A, 2), ty(Family::B, 2)] {
        let datum = build_root_datum(t)?;
        let base = compute_ib(&datum)?.ideal;
        let d = datum.positive_roots().len();
        let mut variants = vec![
            PhiOptions {
                basis: Some(CartanBasis::simple_coroots(&datum)?),
                ..Default::default()
            },
        ];
        for _ in 0..5 {
            variants.push(PhiOptions {
                basis: Some(random_basis(&datum, &mut rng)),
                ..Default::default()
            });
            variants.push(PhiOptions {
                scales: Some(random_scales(d, &mut rng)),
                ..Default::default()
            });
            variants.push(PhiOptions {
                basis: Some(random_basis(&datum, &mut rng)),
                scales: Some(random_scales(d, &mut rng)),
                ..Default::default()
            });
        }
        for opts in &variants {
            runs += 1;
            ok &= compute_ib_from(&phi_matrix_with(&datum, opts)?)?.ideal == base;
        }
    }
    verdict(ok, format!("{runs} basis changes and scalings over A2 and B2"))
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for t in [
        ty(Family::A, 2),
        ty(Family::A, 3),
        ty(Family::B, 2),
        ty(Family::B, 3),
        ty(Family::D, 3),
    ] {
        let a = signed_graph_audit(t)?;
        let good = a.families_equal && a.admissible_count == a.flat_count;
        ok &= good;
        parts.push(format!("{t} {}={}", a.admissible_count, a.flat_count));
    }
    for s in 1..=5 {
        let set: Vec<usize> = (0..s).collect();
        ok &= unbalanced_complete(5, &set, false).edge_count() == 2 * binom(s, 2);
        ok &= unbalanced_complete(5, &set, true).edge_count() == s * s;
    }
    verdict(ok, format!("graphs = flats: {}; unbalanced K_s counts for s = 1..5", parts.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("dimension and codimension table", criterion_1),
        ("A3 lattice and nerve complex", criterion_2),
        ("Cayley generator counts", criterion_3),
        ("SR ideal inside the minor ideal", criterion_4),
        ("SR ideal equals the minor ideal in type A", criterion_5),
        ("linear part of phi", criterion_6),
        ("path-sum inverse", criterion_7),
        ("fiber suite", criterion_8),
        ("invariance suite", criterion_9),
        ("signed-graph audit", criterion_10),
    ];
    let mut unexplained = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match run() {
            Ok(v) => {
                if !v.passed && !v.explained {
                    unexplained += 1;
                }
                let status = match (v.passed, v.explained) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL (pinned)",
                    (false, false) => "FAIL",
                };
                (status, v.detail)
            }
            Err(e) => {
                unexplained += 1;
                ("FAIL", format!("error: {e}"))
            }
        };
        println!("criterion {:>2} {status}: {name} [{:.1?}] {detail}", i + 1, start.elapsed());
    }
    if unexplained == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexplained} criteria failed without a pinned explanation");
        ExitCode::FAILURE
    }
}
