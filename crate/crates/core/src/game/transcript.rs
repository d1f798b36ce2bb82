use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::spaces::{region_to_json, Space};

use super::adjudicate::{adjudicate_all, replay, CertificateStatus, DensityCertificate, MeetEvidence};
use super::family::first_unrefined;
use super::{MoveFamily, Player, TestFamily};

pub const TRANSCRIPT_VERSION: u64 = 1;

/// Full history of a game: `A_0, B_0, A_1, B_1, …` plus metadata and any
/// adjudication certificates.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub space: Space,
    pub seed: u64,
    pub rounds_n: usize,
    pub moves: Vec<MoveFamily>,
    pub p1: String,
    pub p2: String,
    pub test_family: Option<String>,
    pub certificates: Vec<DensityCertificate>,
}

impl Transcript {
    pub fn new(space: Space, seed: u64, rounds_n: usize, p1: String, p2: String) -> Self {
        Transcript {
            space,
            seed,
            rounds_n,
            moves: Vec::new(),
            p1,
            p2,
            test_family: None,
            certificates: Vec::new(),
        }
    }

    pub fn player_one_moves(&self) -> Vec<MoveFamily> {
        self.moves.iter().step_by(2).cloned().collect()
    }

    pub fn player_two_moves(&self) -> Vec<MoveFamily> {
        self.moves.iter().skip(1).step_by(2).cloned().collect()
    }

    pub fn a(&self, n: usize) -> Option<&MoveFamily> {
        self.moves.get(2 * n)
    }

    pub fn b(&self, n: usize) -> Option<&MoveFamily> {
        self.moves.get(2 * n + 1)
    }

    pub fn completed_rounds(&self) -> usize {
        self.moves.len() / 2
    }

    /// Checks alternation, nonemptiness and legality of every pair. The
    /// error names the first offending round.
    pub fn validate(&self) -> Result<()> {
        if self.moves.len() > 2 * self.rounds_n {
            return Err(Error::config(format!(
                "{} moves exceed the round budget {}",
                self.moves.len(),
                self.rounds_n
            )));
        }
        for (i, fam) in self.moves.iter().enumerate() {
            let round = i / 2;
            let expected = if i % 2 == 0 { Player::One } else { Player::Two };
            if fam.owner() != expected {
                return Err(Error::IllegalMove {
                    round,
                    player: fam.owner(),
                    detail: format!("expected a move by {expected}"),
                });
            }
            MoveFamily::validated(fam.owner(), fam.sets().to_vec(), &self.space, round)?;
            if expected == Player::Two {
                let a = &self.moves[i - 1];
                let missing = first_unrefined(&self.space, a.sets(), fam.sets()).map_err(|e| Error::IllegalMove {
                    round,
                    player: Player::Two,
                    detail: e.to_string(),
                })?;
                if let Some(u) = missing {
                    return Err(Error::IllegalMove {
                        round,
                        player: Player::Two,
                        detail: format!("no chosen set refines {}", a.sets()[u]),
                    });
                }
            }
        }
        Ok(())
    }

    /// Adjudicates every completed round against `tf` and stores the
    /// certificates.
    pub fn certify(&mut self, tf: &TestFamily) -> Result<()> {
        self.certificates = adjudicate_all(&self.space, &self.player_two_moves(), tf)?;
        self.test_family = Some(tf.descriptor().to_string());
        Ok(())
    }

    /// Replays every stored certificate against `tf`.
    pub fn replay_certificates(&self, tf: &TestFamily) -> Result<bool> {
        let bs = self.player_two_moves();
        for c in &self.certificates {
            if !replay(&self.space, &bs, tf, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let enc = |r| region_to_json(r);
        let rounds: Vec<Value> = self
            .moves
            .iter()
            .map(|f| {
                json!({
                    "owner": f.owner(),
                    "sets": f.sets().iter().map(enc).collect::<Vec<_>>(),
                })
            })
            .collect();
        let certificates: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| match &c.status {
                CertificateStatus::Pass(ws) => json!({
                    "k": c.k,
                    "status": "pass",
                    "witness": ws.iter().map(|w| json!({
                        "test": enc(&w.test),
                        "round": w.round,
                        "set": enc(&w.set),
                        "meet": enc(&w.meet),
                    })).collect::<Vec<_>>(),
                }),
                CertificateStatus::Fail(t) => json!({
                    "k": c.k,
                    "status": "fail",
                    "failing": enc(t),
                }),
            })
            .collect();
        json!({
            "version": TRANSCRIPT_VERSION,
            "space": self.space.to_string(),
            "seed": self.seed,
            "roundsN": self.rounds_n,
            "rounds": rounds,
            "strategies": { "p1": self.p1, "p2": self.p2 },
            "testFamily": self.test_family,
            "certificates": certificates,
        })
    }

    /// Decodes a transcript. Unknown versions and unknown top-level fields are
    /// rejected; legality is checked separately by [`Transcript::validate`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("transcript must be an object".into()))?;
        const KNOWN: [&str; 8] = [
            "version",
            "space",
            "seed",
            "roundsN",
            "rounds",
            "strategies",
            "testFamily",
            "certificates",
        ];
        if let Some(k) = obj.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(Error::Json(format!("unknown transcript field `{k}`")));
        }
        match obj.get("version").and_then(Value::as_u64) {
            Some(TRANSCRIPT_VERSION) => {}
            other => return Err(Error::Json(format!("unsupported transcript version {other:?}"))),
        }
        let space = Space::parse(str_field(obj, "space")?)?;
        let seed = obj
            .get("seed")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing seed".into()))?;
        let rounds_n = obj
            .get("roundsN")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing roundsN".into()))? as usize;
        let strategies = obj
            .get("strategies")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Json("missing strategies".into()))?;
        let p1 = str_field(strategies, "p1")?.to_string();
        let p2 = str_field(strategies, "p2")?.to_string();
        let mut t = Transcript::new(space, seed, rounds_n, p1, p2);
        let rounds = obj
            .get("rounds")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing rounds".into()))?;
        for r in rounds {
            let owner: Player = serde_json::from_value(r.get("owner").cloned().unwrap_or(Value::Null))?;
            let sets = r
                .get("sets")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("round without sets".into()))?
                .iter()
                .map(|s| t.space.region_from_json(s))
                .collect::<Result<Vec<_>>>()?;
            t.moves.push(MoveFamily::new(owner, sets));
        }
        t.test_family = match obj.get("testFamily") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => return Err(Error::Json(format!("bad testFamily {other}"))),
        };
        if let Some(certs) = obj.get("certificates") {
            let certs = certs
                .as_array()
                .ok_or_else(|| Error::Json("certificates must be an array".into()))?;
            for c in certs {
                t.certificates.push(decode_certificate(&t.space, c)?);
            }
        }
        Ok(t)
    }
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json(format!("missing string field `{key}`")))
}

fn decode_certificate(space: &Space, c: &Value) -> Result<DensityCertificate> {
    let k = c
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Json("certificate without k".into()))? as usize;
    let status = match c.get("status").and_then(Value::as_str) {
        Some("pass") => {
            let ws = c
                .get("witness")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("pass certificate without witness".into()))?;
            let mut out = Vec::with_capacity(ws.len());
            for w in ws {
                let field = |name: &str| {
                    w.get(name)
                        .ok_or_else(|| Error::Json(format!("witness without {name}")))
                        .and_then(|v| space.region_from_json(v))
                };
                out.push(MeetEvidence {
                    test: field("test")?,
                    round: w
                        .get("round")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| Error::Json("witness without round".into()))?
                        as usize,
                    set: field("set")?,
                    meet: field("meet")?,
                });
            }
            CertificateStatus::Pass(out)
        }
        Some("fail") => CertificateStatus::Fail(
            space.region_from_json(
                c.get("failing")
                    .ok_or_else(|| Error::Json("fail certificate without failing".into()))?,
            )?,
        ),
        other => return Err(Error::Json(format!("unknown certificate status {other:?}"))),
    };
    Ok(DensityCertificate { k, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Region;

    fn sample() -> Transcript {
        let mut t = Transcript::new(Space::cantor(), 7, 2, "a".into(), "b".into());
        t.moves.push(MoveFamily::new(Player::One, [Region::cyl(&[])]));
        t.moves.push(MoveFamily::new(Player::Two, [Region::cyl(&[(0, 1)])]));
        t.moves.push(MoveFamily::new(
            Player::One,
            [Region::cyl(&[(0, 0)]), Region::cyl(&[(0, 1)])],
        ));
        t.moves.push(MoveFamily::new(
            Player::Two,
            [Region::cyl(&[(0, 0), (1, 1)]), Region::cyl(&[(0, 1)])],
        ));
        t
    }

    #[test]
    fn json_round_trip() {
        let mut t = sample();
        t.validate().unwrap();
        t.certify(&TestFamily::cylinders(&[0, 1], 2)).unwrap();
        let v = t.to_json();
        let back = Transcript::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v);
        assert!(back.replay_certificates(&TestFamily::cylinders(&[0, 1], 2)).unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let mut t = sample();
        t.moves[3] = MoveFamily::new(Player::Two, [Region::cyl(&[(0, 0), (1, 1)])]);
        assert!(matches!(t.validate(), Err(Error::IllegalMove { round: 1, .. })));
        let mut v = sample().to_json();
        v["version"] = json!(2);
        assert!(Transcript::from_json(&v).is_err());
        let mut v = sample().to_json();
        v["extra"] = json!(true);
        assert!(Transcript::from_json(&v).is_err());
    }
}
