use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use openopen_core::game::{run_game, CertificateStatus, TestFamily, Transcript};
use openopen_core::registry::StrategyRegistry;
use openopen_core::spaces::{region_to_json, ClopenSet, Region, Space};

use crate::util::{emit, tf_descriptor, CapArgs, CliError, CliResult};

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// JSON run configuration; explicit flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub p1: Option<String>,
    #[arg(long)]
    pub p2: Option<String>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Tournament over a seed range `a..b` (or `a..=b`), run in parallel.
    #[arg(long, conflicts_with = "seed")]
    pub seeds: Option<String>,
    /// Test family descriptor (`depth:<d>`, `cyl:<J>:<m>`, `vietoris:<d>:<a>`, `none`).
    #[arg(long)]
    pub tf: Option<String>,
    #[arg(long)]
    pub test_depth: Option<u32>,
    /// Transcript file; a directory of per-seed files in tournament mode.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

/// File form of a simulation run. Unknown fields are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RunConfig {
    space: Option<String>,
    p1: Option<String>,
    p2: Option<String>,
    rounds_n: Option<usize>,
    seed: Option<u64>,
    seeds: Option<String>,
    test_family: Option<String>,
    out: Option<PathBuf>,
}

/// Resolved run, single seed, seed range, output path.
type Resolved = (Run, Option<u64>, Option<String>, Option<PathBuf>);

struct Run {
    space: Space,
    p1: String,
    p2: String,
    rounds: usize,
    tf: TestFamily,
}

pub fn parse_seeds(s: &str) -> CliResult<Range<u64>> {
    let bad = || CliError::config(format!("expected a seed range a..b, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let (b, inclusive) = match b.strip_prefix('=') {
        Some(b) => (b, true),
        None => (b, false),
    };
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    let end = if inclusive { b + 1 } else { b };
    if end <= a {
        return Err(CliError::config(format!("empty seed range `{s}`")));
    }
    Ok(a..end)
}

fn play(run: &Run, seed: u64) -> CliResult<Transcript> {
    let registry = StrategyRegistry::with_defaults();
    let (mut s1, mut s2) = registry.build_pair(&run.p1, &run.p2, &run.space)?;
    let mut t = run_game(s1.as_mut(), s2.as_mut(), &run.space, run.rounds, seed)?;
    t.certify(&run.tf)?;
    Ok(t)
}

/// Exact measure of `∪B_n` over the whole game, with a cylinder disjoint
/// from it when the measure is below 1.
fn measure_summary(t: &Transcript) -> Option<Value> {
    if !t.space.is_cantor() {
        return None;
    }
    let union = ClopenSet::normalize(
        t.player_two_moves()
            .iter()
            .flat_map(|b| b.sets().to_vec())
            .filter_map(|r| r.as_clopen().map(|s| s.cylinders().to_vec()))
            .flatten(),
    );
    let mu = union.measure();
    Some(json!({
        "total": mu.to_string(),
        "complementWitness": union.complement_witness().map(|c| region_to_json(&Region::cylinder(c))),
    }))
}

fn log_summary(t: &Transcript, tf: &TestFamily) {
    eprintln!(
        "{} vs {} on {}, {} rounds, seed {}, test family {} ({} regions)",
        t.p1,
        t.p2,
        t.space,
        t.rounds_n,
        t.seed,
        tf.descriptor(),
        tf.len()
    );
    for c in &t.certificates {
        match &c.status {
            CertificateStatus::Pass(_) => eprintln!("  k={}: pass", c.k),
            CertificateStatus::Fail(r) => eprintln!("  k={}: FAIL, {r} meets no later B_j", c.k),
        }
    }
    if let Some(m) = measure_summary(t) {
        eprintln!("  μ(∪B_n) = {}", m["total"].as_str().unwrap_or("?"));
        match m["complementWitness"].as_array() {
            Some(_) => eprintln!("  complement witness: {}", m["complementWitness"]),
            None => eprintln!("  complement witness: none"),
        }
    }
}

fn resolve(args: &SimulateArgs) -> CliResult<Resolved> {
    let cfg: RunConfig = match &args.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };
    let space_desc = args.space.clone().or(cfg.space).unwrap_or_else(|| "cantor".into());
    let space = args.caps.space(&space_desc)?;
    let p1 = args
        .p1
        .clone()
        .or(cfg.p1)
        .ok_or_else(|| CliError::config("--p1 is required"))?;
    let p2 = args
        .p2
        .clone()
        .or(cfg.p2)
        .ok_or_else(|| CliError::config("--p2 is required"))?;
    let rounds = args
        .rounds
        .or(cfg.rounds_n)
        .ok_or_else(|| CliError::config("--rounds is required"))?;
    let tf_desc = match (&args.tf, args.test_depth) {
        (None, None) => cfg.test_family.unwrap_or_else(|| "depth:2".into()),
        (tf, d) => tf_descriptor(tf.as_deref(), d, "depth:2")?,
    };
    let tf = TestFamily::parse(&tf_desc, &space)?;
    let (seed, seeds) = match (args.seed, &args.seeds) {
        (None, None) => (cfg.seed, cfg.seeds),
        (s, ss) => (s, ss.clone()),
    };
    if seed.is_none() && seeds.is_none() {
        return Err(CliError::config("--seed (or --seeds a..b) is required"));
    }
    let out = args.out.clone().or(cfg.out);
    Ok((
        Run {
            space,
            p1,
            p2,
            rounds,
            tf,
        },
        seed,
        seeds,
        out,
    ))
}

pub fn run(args: &SimulateArgs) -> CliResult {
    let (run, seed, seeds, out) = resolve(args)?;
    match (seed, seeds) {
        (Some(seed), _) => {
            let t = play(&run, seed)?;
            log_summary(&t, &run.tf);
            emit(&t.to_json(), out.as_deref())
        }
        (None, Some(range)) => tournament(&run, parse_seeds(&range)?, out.as_deref()),
        (None, None) => unreachable!("checked in resolve"),
    }
}

fn tournament(run: &Run, seeds: Range<u64>, out_dir: Option<&Path>) -> CliResult {
    let results: Vec<(u64, CliResult<Transcript>)> = seeds.clone().into_par_iter().map(|s| (s, play(run, s))).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut pass_by_k = vec![0usize; run.rounds];
    for (seed, r) in &results {
        let t = match r {
            Ok(t) => t,
            Err(e) => {
                return Err(CliError {
                    code: e.code,
                    message: format!("seed {seed}: {}", e.message),
                })
            }
        };
        if let Some(dir) = out_dir {
            emit(&t.to_json(), Some(&dir.join(format!("seed-{seed}.json"))))?;
        }
        let passed: Vec<bool> = t
            .certificates
            .iter()
            .map(|c| matches!(c.status, CertificateStatus::Pass(_)))
            .collect();
        for (k, p) in passed.iter().enumerate() {
            pass_by_k[k] += usize::from(*p);
        }
        rows.push(json!({ "seed": seed, "passed": passed, "measure": measure_summary(t) }));
    }
    let n = results.len();
    eprintln!("{} vs {} on {}: {n} seeds", run.p1, run.p2, run.space);
    for (k, c) in pass_by_k.iter().enumerate() {
        eprintln!("  k={k}: {c}/{n} pass");
    }
    let summary = json!({
        "space": run.space.to_string(),
        "p1": run.p1,
        "p2": run.p2,
        "roundsN": run.rounds,
        "testFamily": run.tf.descriptor(),
        "seeds": rows,
        "passCountByK": pass_by_k,
    });
    emit(&summary, None)
}
