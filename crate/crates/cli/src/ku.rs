use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde_json::json;

use openopen_core::game::{Player, TestFamily};
use openopen_core::ku::{audit, run_ku_construction, verify_sections, KuConfig};
use openopen_core::registry::{OracleRegistry, StrategyRegistry};

use crate::util::{emit, tf_descriptor, CapArgs, CliError, CliResult};

#[derive(Args, Debug)]
pub struct KuArgs {
    /// Dense open set: `diag`, `graph:<images>`, `nd:<handle>`, `hole`.
    #[arg(long)]
    pub oracle: String,
    /// Oracle used for the section checks; defaults to --oracle.
    #[arg(long)]
    pub check_oracle: Option<String>,
    /// Player I strategy on Y.
    #[arg(long)]
    pub p1: String,
    #[arg(long)]
    pub rounds: usize,
    #[arg(long, default_value_t = 2)]
    pub branching: usize,
    /// Sample points per explored branch.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    #[arg(long)]
    pub test_depth: Option<u32>,
    /// Test family on Y; overrides --test-depth.
    #[arg(long)]
    pub tf: Option<String>,
    #[arg(long)]
    pub seed: u64,
    /// The second factor Y; X is always the Cantor cube.
    #[arg(long, default_value = "cantor")]
    pub space_y: String,
    /// Cap on explored branches; defaults to the space cap.
    #[arg(long)]
    pub max_branches: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

pub fn run(a: &KuArgs) -> CliResult {
    let x = a.caps.space("cantor")?;
    let y = a.caps.space(&a.space_y)?;
    let oracle = OracleRegistry.build(&a.oracle)?;
    let checker = match &a.check_oracle {
        Some(d) => OracleRegistry.build(d)?,
        None => oracle.clone(),
    };
    let s1 = StrategyRegistry::with_defaults().build(&a.p1, Player::One, &y)?;
    let tf = TestFamily::parse(&tf_descriptor(a.tf.as_deref(), a.test_depth, "depth:2")?, &y)?;
    let mut cfg = KuConfig::new(a.rounds, a.branching, a.seed);
    cfg.max_branches = a.max_branches;
    let start = Instant::now();
    let result = run_ku_construction(&x, &y, oracle.as_ref(), s1.as_ref(), &cfg)?;
    let aud = audit(&result, oracle.as_ref())?;
    let sections = verify_sections(&result, checker.as_ref(), a.samples, &tf, a.seed)?;
    eprintln!(
        "{} (checked by {}) on cantor × {}: {} branches, {} pruned, {} boxes audited, {} section checks ({} failed) in {:.2?}",
        oracle.name(),
        checker.name(),
        y,
        aud.branches_checked,
        result.pruned.len(),
        aud.boxes_checked,
        sections.checks(),
        sections.failures().len(),
        start.elapsed()
    );
    for f in &aud.failures {
        eprintln!("  audit {}: {}", f.kind, f.detail);
    }
    for (x, t) in sections.failures().iter().take(10) {
        eprintln!("  section at x = {x} misses test set {t}");
    }
    let out = json!({
        "result": result.to_json(),
        "audit": aud.to_json(),
        "sections": sections.to_json(),
        "testFamily": tf.descriptor(),
        "checkOracle": checker.name(),
    });
    emit(&out, a.out.as_deref())?;
    if !aud.passed() {
        return Err(CliError::verify(format!("{} audit failures", aud.failures.len())));
    }
    if !sections.passed() {
        return Err(CliError::verify(format!(
            "{} section checks failed",
            sections.failures().len()
        )));
    }
    Ok(())
}
