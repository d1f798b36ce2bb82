use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Args;
use serde_json::Value;

use openopen_core::spaces::{Caps, Space};
use openopen_core::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: msg.into(),
        }
    }

    pub fn verify(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VERIFY,
            message: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// Resource bounds shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct CapArgs {
    /// Largest support enumerated exhaustively.
    #[arg(long)]
    pub max_support: Option<usize>,
    /// Largest family a strategy may emit.
    #[arg(long)]
    pub max_family: Option<usize>,
    /// Largest index set of the Cantor strategy.
    #[arg(long)]
    pub max_cantor_coords: Option<usize>,
    /// Largest family produced by closure computations.
    #[arg(long)]
    pub max_closure: Option<usize>,
}

impl CapArgs {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            support: self.max_support.unwrap_or(d.support),
            family: self.max_family.unwrap_or(d.family),
            cantor_coords: self.max_cantor_coords.unwrap_or(d.cantor_coords),
            closure: self.max_closure.unwrap_or(d.closure),
            branches: d.branches,
        }
    }

    pub fn space(&self, desc: &str) -> CliResult<Space> {
        Ok(Space::parse_with_caps(desc, self.caps())?)
    }
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

pub fn parse_json_arg(text: &str, what: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| CliError::config(format!("{what}: {e}")))
}

/// Writes `v` to `out`, or to standard output when no path is given.
pub fn emit(v: &Value, out: Option<&Path>) -> CliResult {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| CliError::config(format!("{}: {e}", dir.display())))?;
            }
            fs::write(p, text + "\n").map_err(|e| CliError::config(format!("{}: {e}", p.display())))?;
            log::info!("wrote {}", p.display());
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}").and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::config(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

/// `--test-depth d` is shorthand for the `depth:d` test family.
pub fn tf_descriptor(tf: Option<&str>, depth: Option<u32>, default: &str) -> CliResult<String> {
    match (tf, depth) {
        (Some(_), Some(_)) => Err(CliError::config("give either --tf or --test-depth, not both")),
        (Some(t), None) => Ok(t.to_string()),
        (None, Some(d)) => Ok(format!("depth:{d}")),
        (None, None) => Ok(default.to_string()),
    }
}
