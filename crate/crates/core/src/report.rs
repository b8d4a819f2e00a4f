//! Orchestration behind the command-line tool: each command runs the
//! relevant computations, records the identities it asserts as checks, and
//! carries the remaining output as data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::{
    coxeter_arrangement, flats, nerve, signed_graph_audit, spanning_sets, sr_codim, sr_dimension, sr_ideal,
    sr_ideal_from_non_faces, table1_row, unbalanced_complete,
};
use crate::error::{Error, Result};
use crate::fiber::{
    check_point, fiber_ideal_with, g0_preset, perturb_lower, sample_fiber_instance, sample_point_over,
    DEFAULT_ENTRY_RANGE,
};
use crate::ideal::MonomialIdeal;
use crate::phi::{compute_ib, verify_linear_part, IBResult};
use crate::rational;
use crate::roots::{build_root_datum, Family, RootDatum, RootSystemType};

pub const SCHEMA: &str = "lulu-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrangementView {
    Table1,
    Lattice,
    NonFaces,
}

/// A fully parsed command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Ib { ty: RootSystemType },
    Sr { ty: RootSystemType },
    Inclusion { ty: RootSystemType },
    Equality { ty: RootSystemType },
    Table1 { max_rank: usize },
    Fiber { rank: usize, samples: u64, seed: u64, g0: Option<String> },
    Audit { ty: RootSystemType },
    Arrangement { ty: RootSystemType, view: ArrangementView },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ib { .. } => "ib",
            Command::Sr { .. } => "sr",
            Command::Inclusion { .. } => "inclusion",
            Command::Equality { .. } => "equality",
            Command::Table1 { .. } => "table1",
            Command::Fiber { .. } => "fiber",
            Command::Audit { .. } => "audit",
            Command::Arrangement { .. } => "arrangement",
        }
    }

    /// Rank caps keeping each run short. `None` when within limits,
    /// otherwise a description of the exceeded cap.
    pub fn cap_violation(&self) -> Option<String> {
        let (rank, cap) = match self {
            Command::Ib { ty } | Command::Inclusion { ty } | Command::Equality { ty } => {
                (ty.rank(), if ty.family() == Family::A { 4 } else { 3 })
            }
            Command::Sr { ty } | Command::Audit { ty } | Command::Arrangement { ty, .. } => (ty.rank(), 6),
            Command::Table1 { max_rank } => (*max_rank, 6),
            Command::Fiber { rank, .. } => (*rank, 4),
        };
        (rank > cap).then(|| format!("{} is capped at rank {cap}, got {rank}", self.name()))
    }
}

/// One asserted identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub data: Value,
    pub warnings: Vec<String>,
}

impl Report {
    fn new(command: &Command, params: Value) -> Self {
        Report {
            schema: SCHEMA,
            command: command.name().to_string(),
            params,
            checks: Vec::new(),
            data: json!({}),
            warnings: Vec::new(),
        }
    }

    /// Whether every asserted identity holds.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, compact(&self.params));
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Value::Object(map) = &self.data {
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", compact(v));
            }
        }
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let _ = writeln!(out, "{}", if self.passed() { "all checks passed" } else { "some checks FAILED" });
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 160 {
        format!("{}...", &s[..157])
    } else {
        s
    }
}

/// Sets the size of the global worker pool from `LULU_THREADS`.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("LULU_THREADS") else {
        return Ok(());
    };
    let k: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Configuration(format!("LULU_THREADS must be a positive integer, got {raw:?}")))?;
    if k == 0 {
        return Err(Error::Configuration("LULU_THREADS must be positive".into()));
    }
    // a pool may already exist when called twice; keep the first
    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    Ok(())
}

/// Runs a command. Rank caps are enforced unless `force` is set, in which
/// case the report carries a warning.
pub fn run(command: &Command, force: bool) -> Result<Report> {
    let mut warnings = Vec::new();
    if let Some(v) = command.cap_violation() {
        if !force {
            return Err(Error::Usage(format!("{v}; pass --force to run anyway")));
        }
        warnings.push(v);
    }
    let mut report = match command {
        Command::Ib { ty } => cmd_ib(command, *ty)?,
        Command::Sr { ty } => cmd_sr(command, *ty)?,
        Command::Inclusion { ty } => cmd_inclusion(command, *ty)?,
        Command::Equality { ty } => cmd_equality(command, *ty)?,
        Command::Table1 { max_rank } => cmd_table1(command, *max_rank)?,
        Command::Fiber { rank, samples, seed, g0 } => cmd_fiber(command, *rank, *samples, *seed, g0.as_deref())?,
        Command::Audit { ty } => cmd_audit(command, *ty)?,
        Command::Arrangement { ty, view } => cmd_arrangement(command, *ty, *view)?,
    };
    report.warnings = warnings;
    Ok(report)
}

fn type_params(ty: RootSystemType) -> Value {
    json!({ "type": ty.family().to_string(), "rank": ty.rank() })
}

fn named_generators(ideal: &MonomialIdeal, names: &[String]) -> Vec<String> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            let parts: Vec<String> = g
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect()
}

fn ideal_summary(ideal: &MonomialIdeal, names: &[String]) -> Result<Value> {
    Ok(json!({
        "count": ideal.len(),
        "codim": ideal.codim()?,
        "max_degree": ideal.max_degree(),
        "squarefree": ideal.is_squarefree(),
        "generators": named_generators(ideal, names),
        "exponents": ideal.generators().iter().collect::<Vec<_>>(),
    }))
}

fn cayley(n: usize) -> usize {
    (n + 1).pow(n as u32 - 1)
}

fn cmd_ib(command: &Command, ty: RootSystemType) -> Result<Report> {
    let mut r = Report::new(command, type_params(ty));
    let datum = build_root_datum(ty)?;
    let ib = compute_ib(&datum)?;
    let n = ty.rank();
    let min_deg = ib.all_support.iter().map(|m| m.degree()).min();
    r.check(
        "minors_in_m^n",
        min_deg.is_none_or(|d| d as usize >= n),
        format!("least support degree {min_deg:?}, rank {n}"),
    );
    let codim = ib.ideal.codim()?;
    r.check("codim_at_least_rank", codim >= n, format!("codim {codim}, rank {n}"));
    r.check("linear_part", verify_linear_part(&datum)?, "degree-1 part of each row is H_alpha x_alpha");
    r.data = json!({
        "variables": datum.variable_names(),
        "minor_count": ib.minor_count,
        "support_size": ib.all_support.len(),
        "ideal": ideal_summary(&ib.ideal, &datum.variable_names())?,
    });
    Ok(r)
}

fn cmd_sr(command: &Command, ty: RootSystemType) -> Result<Report> {
    let mut r = Report::new(command, type_params(ty));
    let datum = build_root_datum(ty)?;
    let ideal = sr_ideal(ty)?;
    let n = ty.rank();
    r.check(
        "squarefree_degree_n",
        ideal.is_squarefree() && ideal.generators().iter().all(|g| g.degree() as usize == n),
        format!("{} generators", ideal.len()),
    );
    if ty.family() == Family::A {
        r.check(
            "count_(n+1)^(n-1)",
            ideal.len() == cayley(n),
            format!("{} generators, expected {}", ideal.len(), cayley(n)),
        );
    }
    if n <= 4 {
        let arr = coxeter_arrangement(ty);
        let c = nerve(&arr)?;
        let direct = sr_ideal_from_non_faces(arr.len(), &c.minimal_non_faces())?;
        r.check("minimal_non_faces_are_spanning_sets", direct == ideal, "direct enumeration from the nerve complex");
    }
    r.data = json!({
        "variables": datum.variable_names(),
        "ideal": ideal_summary(&ideal, &datum.variable_names())?,
    });
    Ok(r)
}

/// Both ideals over the same variables.
pub struct IdealPair {
    pub datum: RootDatum,
    pub sr: MonomialIdeal,
    pub ib: IBResult,
}

pub fn ideal_pair(ty: RootSystemType) -> Result<IdealPair> {
    let datum = build_root_datum(ty)?;
    Ok(IdealPair {
        sr: sr_ideal(ty)?,
        ib: compute_ib(&datum)?,
        datum,
    })
}

fn pair_data(p: &IdealPair) -> Result<Value> {
    let names = p.datum.variable_names();
    Ok(json!({
        "variables": names,
        "sr": ideal_summary(&p.sr, &names)?,
        "ib": ideal_summary(&p.ib.ideal, &names)?,
    }))
}

fn cmd_inclusion(command: &Command, ty: RootSystemType) -> Result<Report> {
    let mut r = Report::new(command, type_params(ty));
    let p = ideal_pair(ty)?;
    let outside = p.sr.witnesses_outside(&p.ib.ideal)?;
    r.check(
        "sr_subset_ib",
        outside.is_empty(),
        format!("{} Stanley-Reisner generators outside", outside.len()),
    );
    r.data = pair_data(&p)?;
    Ok(r)
}

fn cmd_equality(command: &Command, ty: RootSystemType) -> Result<Report> {
    let mut r = Report::new(command, type_params(ty));
    let p = ideal_pair(ty)?;
    let equal = p.sr == p.ib.ideal;
    let n = ty.rank();
    let mut data = pair_data(&p)?;
    data["equal"] = json!(equal);
    if ty.family() == Family::A {
        r.check("sr_equals_ib", equal, format!("{} vs {} generators", p.sr.len(), p.ib.ideal.len()));
        r.check(
            "count_(n+1)^(n-1)",
            p.ib.ideal.len() == cayley(n),
            format!("{} generators, expected {}", p.ib.ideal.len(), cayley(n)),
        );
        r.check(
            "ib_squarefree_degree_n",
            p.ib.ideal.is_squarefree() && p.ib.ideal.generators().iter().all(|g| g.degree() as usize == n),
            "all generators of the ideal from the minors",
        );
    } else {
        data["note"] = json!("equality outside type A is an open question; reported, not asserted");
    }
    r.data = data;
    Ok(r)
}

fn cmd_table1(command: &Command, max_rank: usize) -> Result<Report> {
    let mut r = Report::new(command, json!({ "max_rank": max_rank }));
    let mut rows = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in 2..=max_rank {
            let Ok(t) = RootSystemType::new(family, rank) else {
                continue;
            };
            let row = table1_row(t)?;
            r.check(
                row.ty.clone(),
                row.matches,
                format!(
                    "dim {} codim {}, closed form {} and {}",
                    row.dim, row.codim, row.expected_dim, row.expected_codim
                ),
            );
            rows.push(row);
        }
    }
    r.data = json!({ "rows": rows });
    Ok(r)
}

/// Aggregate of the fiber checks over a run of samples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub samples: u64,
    pub points_found: u64,
    pub on_fiber: u64,
    pub perturbed_agreement: u64,
    pub perturbed_off_fiber: u64,
    pub f0_checked: u64,
    pub f0_identity: bool,
    pub generator_count_ok: bool,
    pub rank_histogram: BTreeMap<usize, u64>,
}

impl FiberSummary {
    pub fn membership_agreement(&self) -> bool {
        self.on_fiber == self.points_found && self.perturbed_agreement == self.points_found
    }

    pub fn full_rank_fraction(&self, n: usize) -> f64 {
        let total: u64 = self.rank_histogram.values().sum();
        if total == 0 {
            return 0.0;
        }
        *self.rank_histogram.get(&n).unwrap_or(&0) as f64 / total as f64
    }
}

/// Samples `samples` points (forward sampling, or points over a preset
/// `g0`), checks both membership routes at each point and at a perturbed
/// copy, records Jacobian ranks, and checks `f_0` on the first `f0_checks`.
pub fn fiber_summary(n: usize, samples: u64, seed: u64, preset: Option<&str>, f0_checks: u64, jacobian: bool) -> Result<FiberSummary> {
    let mut s = FiberSummary {
        samples,
        f0_identity: true,
        generator_count_ok: true,
        ..Default::default()
    };
    let fixed = preset.map(|p| g0_preset(p, n)).transpose()?;
    for k in 0..samples {
        let sample_seed = seed.wrapping_add(k);
        let inst = match &fixed {
            None => sample_fiber_instance(n, sample_seed)?,
            Some(g) => match sample_point_over(g, sample_seed, DEFAULT_ENTRY_RANGE)? {
                Some(i) => i,
                None => continue,
            },
        };
        s.points_found += 1;
        let check_f0 = k < f0_checks;
        let ideal = fiber_ideal_with(&inst.g0, check_f0)?;
        if check_f0 {
            s.f0_checked += 1;
            s.f0_identity &= ideal.f0_identity == Some(true);
        }
        s.generator_count_ok &= ideal.generators.len() == n;
        let on = check_point(&ideal, &inst.l1, &inst.u1)?;
        if on.on_fiber() {
            s.on_fiber += 1;
        }
        // move one entry of the last row of L1 by +1
        let col = (sample_seed % n as u64) as usize;
        let bad = perturb_lower(&inst.l1, n, col, &rational::int(1))?;
        let off = check_point(&ideal, &bad, &inst.u1)?;
        if off.agree() {
            s.perturbed_agreement += 1;
        }
        if !off.ul_route {
            s.perturbed_off_fiber += 1;
        }
        if jacobian {
            *s.rank_histogram.entry(ideal.jacobian_rank(&inst.coordinates())?).or_insert(0) += 1;
        }
    }
    Ok(s)
}

fn cmd_fiber(command: &Command, rank: usize, samples: u64, seed: u64, g0: Option<&str>) -> Result<Report> {
    let mut r = Report::new(
        command,
        json!({ "type": "A", "rank": rank, "samples": samples, "seed": seed, "g0": g0 }),
    );
    if rank == 0 {
        return Err(Error::Usage("fiber needs rank at least 1".into()));
    }
    let preset = match g0 {
        None => None,
        Some(p) => Some(p.strip_prefix("preset:").ok_or_else(|| {
            Error::Usage(format!("--g0 expects preset:<name>, got {p:?}"))
        })?),
    };
    let s = fiber_summary(rank, samples, seed, preset, samples.min(10), true)?;
    r.check("f0_identity", s.f0_identity, format!("f_0 vanishes identically on {} samples", s.f0_checked));
    r.check("generator_count", s.generator_count_ok, format!("{rank} generators per fiber"));
    r.check(
        "membership_agreement",
        s.membership_agreement(),
        format!(
            "{} of {} points on the fiber by both routes, {} perturbed points agree",
            s.on_fiber, s.points_found, s.perturbed_agreement
        ),
    );
    let max_rank = s.rank_histogram.keys().max().copied().unwrap_or(0);
    r.check("jacobian_rank_at_most_n", max_rank <= rank, format!("largest rank {max_rank}"));
    let frac = s.full_rank_fraction(rank);
    r.check(
        "jacobian_rank_n_at_95_percent",
        frac >= 0.95,
        format!("{:.1}% of samples at rank {rank}", frac * 100.0),
    );
    r.data = json!({
        "rank_histogram": s.rank_histogram,
        "f0_identity": s.f0_identity,
        "membership_agreement": s.membership_agreement(),
        "summary": s,
    });
    Ok(r)
}

fn cmd_audit(command: &Command, ty: RootSystemType) -> Result<Report> {
    let mut r = Report::new(command, type_params(ty));
    let a = signed_graph_audit(ty)?;
    r.check(
        "graphs_match_flats",
        a.families_equal && a.admissible_count == a.flat_count,
        format!("{} admissible graphs, {} interior flats", a.admissible_count, a.flat_count),
    );
    r.check(
        "max_edges_is_sr_dimension",
        a.dimension_matches,
        format!("{} edges, dimension {}", a.max_edge_count, a.sr_dimension),
    );
    if ty.family() != Family::A {
        let half = ty.family() != Family::D;
        for s in 1..=ty.rank() {
            let set: Vec<usize> = (0..s).collect();
            let count = unbalanced_complete(ty.rank(), &set, half).edge_count();
            let expected = if half { s * s } else { s * (s - 1) };
            r.check(format!("unbalanced_K_{s}"), count == expected, format!("{count} edges, expected {expected}"));
        }
    }
    r.data = serde_json::to_value(&a).expect("audit serializes");
    Ok(r)
}

fn cmd_arrangement(command: &Command, ty: RootSystemType, view: ArrangementView) -> Result<Report> {
    let mut params = type_params(ty);
    params["report"] = json!(match view {
        ArrangementView::Table1 => "table1",
        ArrangementView::Lattice => "lattice",
        ArrangementView::NonFaces => "nonfaces",
    });
    let mut r = Report::new(command, params);
    let arr = coxeter_arrangement(ty);
    match view {
        ArrangementView::Table1 => {
            let row = table1_row(ty)?;
            r.check(row.ty.clone(), row.matches, format!("dim {} codim {}", row.dim, row.codim));
            r.data = serde_json::to_value(&row).expect("row serializes");
        }
        ArrangementView::Lattice => {
            let fl = flats(&arr)?;
            let c = nerve(&arr)?;
            r.data = json!({
                "normals": arr.normals(),
                "flats": fl,
                "facets": c.facets,
                "sr_dimension": sr_dimension(&c),
                "sr_codim": sr_codim(&arr, &c),
            });
        }
        ArrangementView::NonFaces => {
            let c = nerve(&arr)?;
            let mut direct = c.minimal_non_faces();
            direct.sort();
            let mut spanning = spanning_sets(&arr);
            spanning.sort();
            r.check(
                "minimal_non_faces_are_spanning_sets",
                direct == spanning,
                format!("{} minimal non-faces, {} spanning sets", direct.len(), spanning.len()),
            );
            r.data = json!({ "minimal_non_faces": direct });
        }
    }
    Ok(r)
}
