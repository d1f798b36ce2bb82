use rand::Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::game::TestFamily;
use crate::spaces::{fresh_coordinates, region_to_json, Region};

use super::construction::{path_rng, KuResult};
use super::oracle::{clopen, DenseOpenOracle};

/// Fresh random bits added to each sampled point's cylinder.
pub const SAMPLE_EXTRA_BITS: usize = 3;

#[derive(Clone, Debug)]
pub struct SectionCheck {
    pub test: Region,
    pub passed: bool,
    /// The box `U* × V*` found inside `E` with `U* ⊆ x`, `V* ⊆ t`.
    pub witness: Option<(Region, Region)>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SectionSample {
    pub path: Vec<usize>,
    /// A cylinder inside the branch's last cell.
    pub x: Region,
    pub checks: Vec<SectionCheck>,
}

#[derive(Clone, Debug, Default)]
pub struct SectionReport {
    pub samples: Vec<SectionSample>,
}

impl SectionReport {
    pub fn checks(&self) -> usize {
        self.samples.iter().map(|s| s.checks.len()).sum()
    }

    /// `(x, t)` of every failed check.
    pub fn failures(&self) -> Vec<(&Region, &Region)> {
        self.samples
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (&s.x, &c.test)))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks(),
            "samples": self.samples.iter().map(|s| json!({
                "path": s.path,
                "x": region_to_json(&s.x),
                "checks": s.checks.iter().map(|c| json!({
                    "test": region_to_json(&c.test),
                    "passed": c.passed,
                    "witness": c.witness.as_ref().map(|(u, v)| json!([region_to_json(u), region_to_json(v)])),
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Samples `samples` points per explored branch and checks, for every test
/// set `t`, that the oracle finds a box of `E` inside `x × t`. Each sample is
/// the branch's last cell narrowed by random bits on fresh coordinates.
pub fn verify_sections(
    result: &KuResult,
    oracle: &dyn DenseOpenOracle,
    samples: usize,
    tf: &TestFamily,
    seed: u64,
) -> Result<SectionReport> {
    let y = &result.y;
    let x_space = &result.x;
    let mut used = result.support();
    for t in tf.regions() {
        used.extend(y.support(t));
    }
    let fresh = fresh_coordinates(&used, SAMPLE_EXTRA_BITS);
    let mut report = SectionReport::default();
    for branch in result.branches() {
        let last = branch.qs.last().expect("nonempty branch");
        let base = clopen(&result.oracle, last)?
            .first_cylinder()
            .cloned()
            .expect("nonempty cell");
        let mut rng = path_rng(seed ^ 0x5345_4354, &branch.path);
        for _ in 0..samples {
            let mut c = base.clone();
            for &f in &fresh {
                c = c.with(f, rng.gen()).expect("fresh coordinate");
            }
            let x = Region::cylinder(c);
            let mut checks = Vec::with_capacity(tf.len());
            for t in tf.regions() {
                let check = match oracle.refine(y, &x, std::slice::from_ref(t)) {
                    Err(e) => SectionCheck {
                        test: t.clone(),
                        passed: false,
                        witness: None,
                        detail: Some(e.to_string()),
                    },
                    Ok((u, mut vs)) => {
                        let v = vs.pop().unwrap_or_else(|| y.empty());
                        let ok = vs.is_empty()
                            && x_space.is_nonempty(&u)?
                            && x_space.subset(&u, &x)?
                            && y.is_nonempty(&v)?
                            && y.subset(&v, t)?
                            && oracle.contains_box(y, &u, &v)?;
                        SectionCheck {
                            test: t.clone(),
                            passed: ok,
                            detail: (!ok).then(|| format!("{u} × {v} is not a box of E inside x × t")),
                            witness: Some((u, v)),
                        }
                    }
                };
                checks.push(check);
            }
            report.samples.push(SectionSample {
                path: branch.path.clone(),
                x,
                checks,
            });
        }
    }
    Ok(report)
}
