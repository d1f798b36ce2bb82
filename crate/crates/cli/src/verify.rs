use std::path::PathBuf;

use clap::Args;

use openopen_core::game::{adjudicate_all, TestFamily, Transcript};
use openopen_core::Error;

use crate::util::{read_json, CliError, CliResult};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Transcript JSON written by `simulate` or exported by the service.
    pub transcript: PathBuf,
    /// Test family; defaults to the one recorded in the transcript.
    #[arg(long)]
    pub tf: Option<String>,
}

/// Re-checks legality of every round and replays every stored certificate.
/// Stored certificates must also agree with a fresh adjudication.
pub fn run(args: &VerifyArgs) -> CliResult {
    let v = read_json(&args.transcript)?;
    let t = Transcript::from_json(&v)?;
    if let Err(e) = t.validate() {
        return Err(match e {
            Error::IllegalMove { .. } => CliError::verify(format!("illegal transcript: {e}")),
            other => other.into(),
        });
    }
    let desc = args
        .tf
        .clone()
        .or_else(|| t.test_family.clone())
        .ok_or_else(|| CliError::config("transcript names no test family; pass --tf"))?;
    let tf = TestFamily::parse(&desc, &t.space)?;
    if !t.replay_certificates(&tf)? {
        return Err(CliError::verify("a stored certificate does not replay"));
    }
    let fresh = adjudicate_all(&t.space, &t.player_two_moves(), &tf)?;
    if !t.certificates.is_empty() && t.certificates.len() != fresh.len() {
        return Err(CliError::verify(format!(
            "{} certificates stored, {} rounds completed",
            t.certificates.len(),
            fresh.len()
        )));
    }
    for (stored, f) in t.certificates.iter().zip(&fresh) {
        if stored.passed() != f.passed() {
            return Err(CliError::verify(format!(
                "certificate k={} disagrees with adjudication",
                stored.k
            )));
        }
    }
    eprintln!(
        "{}: {} rounds legal, {} certificates replay against {desc}",
        args.transcript.display(),
        t.completed_rounds(),
        t.certificates.len()
    );
    for c in &fresh {
        match c.failing() {
            None => eprintln!("  k={}: pass", c.k),
            Some(r) => eprintln!("  k={}: FAIL, {r} meets no later B_j", c.k),
        }
    }
    Ok(())
}
