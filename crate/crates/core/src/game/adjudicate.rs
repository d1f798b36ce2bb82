use crate::error::{Error, Result};
use crate::spaces::{Region, Space};

use super::{MoveFamily, TestFamily};

/// Re-checkable evidence that a test region meets a played set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetEvidence {
    pub test: Region,
    /// Round `j ≥ k` of the Player II family holding `set`.
    pub round: usize,
    pub set: Region,
    pub meet: Region,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Pass(Vec<MeetEvidence>),
    /// A test region meeting no `B_j` with `j ≥ k`.
    Fail(Region),
}

/// Finite verdict on whether `B_k ∪ B_{k+1} ∪ …` is dense, relative to a
/// test family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityCertificate {
    pub k: usize,
    pub status: CertificateStatus,
}

impl DensityCertificate {
    pub fn passed(&self) -> bool {
        matches!(self.status, CertificateStatus::Pass(_))
    }

    pub fn failing(&self) -> Option<&Region> {
        match &self.status {
            CertificateStatus::Fail(r) => Some(r),
            CertificateStatus::Pass(_) => None,
        }
    }
}

/// For each test region, the latest round whose Player II family meets it.
pub fn last_meeting_round(space: &Space, bs: &[MoveFamily], tf: &TestFamily) -> Result<Vec<Option<usize>>> {
    tf.regions()
        .iter()
        .map(|t| {
            for (j, b) in bs.iter().enumerate().rev() {
                for v in b.sets() {
                    if space.meets(t, v)? {
                        return Ok(Some(j));
                    }
                }
            }
            Ok(None)
        })
        .collect()
}

/// `covered[k][i]`: test region `i` meets some member of `B_j`, `j ≥ k`.
pub fn coverage(space: &Space, bs: &[MoveFamily], tf: &TestFamily) -> Result<Vec<Vec<bool>>> {
    let last = last_meeting_round(space, bs, tf)?;
    Ok((0..bs.len())
        .map(|k| last.iter().map(|l| l.is_some_and(|j| j >= k)).collect())
        .collect())
}

/// Passes iff every test region meets some member of some `B_j`, `j ≥ k`.
/// `bs` are the Player II families in round order.
pub fn adjudicate(space: &Space, bs: &[MoveFamily], tf: &TestFamily, k: usize) -> Result<DensityCertificate> {
    if k >= bs.len() {
        return Err(Error::config(format!(
            "adjudication round {k} out of range ({} completed rounds)",
            bs.len()
        )));
    }
    let mut witnesses = Vec::with_capacity(tf.len());
    'tests: for t in tf.regions() {
        for (j, b) in bs.iter().enumerate().skip(k) {
            for v in b.sets() {
                let meet = space.intersect(t, v)?;
                if space.is_nonempty(&meet)? {
                    witnesses.push(MeetEvidence {
                        test: t.clone(),
                        round: j,
                        set: v.clone(),
                        meet,
                    });
                    continue 'tests;
                }
            }
        }
        return Ok(DensityCertificate {
            k,
            status: CertificateStatus::Fail(t.clone()),
        });
    }
    Ok(DensityCertificate {
        k,
        status: CertificateStatus::Pass(witnesses),
    })
}

/// Certificates for every `k` below the number of completed rounds.
pub fn adjudicate_all(space: &Space, bs: &[MoveFamily], tf: &TestFamily) -> Result<Vec<DensityCertificate>> {
    (0..bs.len()).map(|k| adjudicate(space, bs, tf, k)).collect()
}

/// Independently re-checks a certificate: every claimed meet is a nonempty
/// intersection of a test region with a set actually played at the claimed
/// round, every test region is covered, and a failing region meets nothing
/// played from round `k` on.
pub fn replay(space: &Space, bs: &[MoveFamily], tf: &TestFamily, cert: &DensityCertificate) -> Result<bool> {
    if cert.k >= bs.len() {
        return Ok(false);
    }
    match &cert.status {
        CertificateStatus::Pass(ws) => {
            for t in tf.regions() {
                if !ws.iter().any(|w| &w.test == t) {
                    return Ok(false);
                }
            }
            for w in ws {
                if w.round < cert.k || w.round >= bs.len() || !bs[w.round].sets().contains(&w.set) {
                    return Ok(false);
                }
                let meet = space.intersect(&w.test, &w.set)?;
                if !space.same_points(&meet, &w.meet)? || !space.is_nonempty(&meet)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CertificateStatus::Fail(t) => {
            for b in &bs[cert.k..] {
                for v in b.sets() {
                    if space.meets(t, v)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;

    fn b(sets: &[&[(u32, u8)]]) -> MoveFamily {
        MoveFamily::new(Player::Two, sets.iter().map(|c| Region::cyl(c)))
    }

    #[test]
    fn adjudication_examples() {
        let c = Space::cantor();
        let bs = vec![b(&[&[(0, 0)]]), b(&[&[(0, 1)]])];
        let tf = TestFamily::cylinders(&[0], 1);
        let c0 = adjudicate(&c, &bs, &tf, 0).unwrap();
        assert!(c0.passed());
        assert!(replay(&c, &bs, &tf, &c0).unwrap());
        let c1 = adjudicate(&c, &bs, &tf, 1).unwrap();
        assert_eq!(c1.failing(), Some(&Region::cyl(&[(0, 0)])));
        assert!(replay(&c, &bs, &tf, &c1).unwrap());
        assert!(adjudicate(&c, &bs, &TestFamily::empty(), 1).unwrap().passed());
        assert!(adjudicate(&c, &bs, &tf, 2).is_err());
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let c = Space::cantor();
        let bs = vec![b(&[&[(0, 0)]]), b(&[&[(0, 1)]])];
        let tf = TestFamily::cylinders(&[0], 1);
        let mut cert = adjudicate(&c, &bs, &tf, 0).unwrap();
        if let CertificateStatus::Pass(ws) = &mut cert.status {
            ws[1].set = Region::cyl(&[(5, 1)]);
        }
        assert!(!replay(&c, &bs, &tf, &cert).unwrap());
        let bogus = DensityCertificate {
            k: 0,
            status: CertificateStatus::Fail(Region::cyl(&[(0, 0)])),
        };
        assert!(!replay(&c, &bs, &tf, &bogus).unwrap());
    }

    #[test]
    fn coverage_matches_certificates() {
        let c = Space::cantor();
        let bs = vec![b(&[&[(0, 0)]]), b(&[&[(0, 1)]]), b(&[&[(1, 1)]])];
        let tf = TestFamily::cylinders(&[0, 1], 2);
        let cov = coverage(&c, &bs, &tf).unwrap();
        for (k, row) in cov.iter().enumerate() {
            let cert = adjudicate(&c, &bs, &tf, k).unwrap();
            assert_eq!(cert.passed(), row.iter().all(|&x| x));
        }
    }
}
