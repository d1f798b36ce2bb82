use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::{json, Value};

use openopen_core::clubfilter::{
    check_condition3, check_condition3_hyperspace, parse_filter, verify_condition3, Condition3, FilterElement,
};
use openopen_core::registry::StrategyRegistry;
use openopen_core::spaces::{region_to_json, Region, Space};

use crate::util::{emit, parse_json_arg, read_json, CapArgs, CliError, CliResult};

#[derive(Subcommand, Debug)]
pub enum ClubCommand {
    /// Builds a filter element from a descriptor.
    Build(BuildArgs),
    /// Checks condition (3) of a filter element against a region V.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Filter descriptor: `cj:<J>:<maxDom>`, `aaa:<strategy>:<depth>:<arity>:<seqlen>`,
    /// `prod(<f>,…)`, `exp(<inner>):<maxArity>`.
    #[arg(long, required_unless_present = "element")]
    pub filter: Option<String>,
    /// Filter element JSON written by `club build`.
    #[arg(long, conflicts_with = "filter")]
    pub element: Option<PathBuf>,
    /// Space; defaults to `exp(cantor)` for `exp(…)` filters, else `cantor`.
    #[arg(long)]
    pub space: Option<String>,
    /// Seed regions (JSON) that the element must contain.
    #[arg(long = "seed-region")]
    pub seed_regions: Vec<String>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: Source,
    /// The region V, in the space's JSON encoding.
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn default_space(filter: &str) -> &'static str {
    if filter.starts_with("exp(") {
        "exp(cantor)"
    } else {
        "cantor"
    }
}

fn element(src: &Source) -> CliResult<FilterElement> {
    if let Some(p) = &src.element {
        return Ok(FilterElement::from_json(&read_json(p)?)?);
    }
    let filter = src.filter.as_deref().expect("clap requires --filter or --element");
    let space = src.caps.space(src.space.as_deref().unwrap_or(default_space(filter)))?;
    let seed = src
        .seed_regions
        .iter()
        .map(|s| Ok(space.region_from_json(&parse_json_arg(s, "--seed-region")?)?))
        .collect::<CliResult<Vec<Region>>>()?;
    let source = parse_filter(filter, &space, &StrategyRegistry::with_defaults())?;
    Ok(source.extend(&seed)?)
}

pub fn run(cmd: &ClubCommand) -> CliResult {
    match cmd {
        ClubCommand::Build(a) => {
            let el = element(&a.source)?;
            eprintln!("{} members on {}", el.len(), el.space());
            emit(&el.to_json(), a.out.as_deref())
        }
        ClubCommand::Check(a) => check(a),
    }
}

fn points_json(points: &Option<Vec<openopen_core::spaces::Point>>) -> Value {
    match points {
        Some(ps) => json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn check(a: &CheckArgs) -> CliResult {
    let el = element(&a.source)?;
    let space: &Space = el.space();
    let v = space.region_from_json(&parse_json_arg(&a.v, "--v")?)?;
    let result = if space.hyperspace_inner().is_some() {
        check_condition3_hyperspace(&el, &v)?
    } else {
        check_condition3(&el, &v)?
    };
    let verified = verify_condition3(&el, &v, &result)?;
    let gap = el.intersection_gap()?;
    let out = match &result {
        Condition3::Witness { index, w, points } => json!({
            "v": region_to_json(&v),
            "holds": true,
            "index": index,
            "witness": region_to_json(w),
            "points": points_json(points),
            "verified": verified,
            "intersectionClosed": gap.is_none(),
        }),
        Condition3::Counterexample(pairs) => json!({
            "v": region_to_json(&v),
            "holds": false,
            "counterexample": pairs.iter().map(|(w, u)| json!({ "W": region_to_json(w), "U": region_to_json(u) })).collect::<Vec<_>>(),
            "verified": verified,
            "intersectionClosed": gap.is_none(),
        }),
    };
    match result.witness() {
        Some(w) => eprintln!("witness {w} (member {} of {})", out["index"], el.len()),
        None => eprintln!("no member of the element witnesses V = {v}"),
    }
    emit(&out, a.out.as_deref())?;
    if !verified {
        return Err(CliError::verify("condition (3) result failed independent verification"));
    }
    if result.witness().is_none() {
        return Err(CliError::verify(format!("condition (3) fails for V = {v}")));
    }
    Ok(())
}
