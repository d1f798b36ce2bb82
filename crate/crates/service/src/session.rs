//! One interactive game between a human client and an engine strategy.

use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use openopen_core::game::{coverage, first_unrefined, Game, MoveFamily, Player, Strategy, TestFamily, Transcript};
use openopen_core::registry::StrategyRegistry;
use openopen_core::spaces::{region_to_json, ClopenSet, Region, Space};
use openopen_core::Error;

use crate::error::ApiError;

/// Which player the human controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub enum Role {
    #[serde(alias = "I", alias = "PlayerI", alias = "player-i", alias = "p1")]
    PlayerI,
    #[serde(alias = "II", alias = "PlayerII", alias = "player-ii", alias = "p2")]
    PlayerII,
}

impl Role {
    pub fn player(self) -> Player {
        match self {
            Role::PlayerI => Player::One,
            Role::PlayerII => Player::Two,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Role::PlayerI => "PlayerI",
            Role::PlayerII => "PlayerII",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CreateSession {
    pub space: String,
    pub role: Role,
    pub engine: String,
    pub rounds_n: usize,
    #[serde(default = "default_tf")]
    pub test_family: String,
    pub seed: u64,
}

fn default_tf() -> String {
    "depth:2".into()
}

/// Body of a move or preview request.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovePayload {
    pub sets: Vec<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    AwaitingHuman,
    AwaitingEngine,
    Finished,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::AwaitingHuman => "awaiting-human",
            Status::AwaitingEngine => "awaiting-engine",
            Status::Finished => "finished",
        }
    }
}

pub struct Session {
    id: String,
    request: CreateSession,
    human: Player,
    engine: Box<dyn Strategy>,
    game: Game,
    tf: TestFamily,
    last_engine_error: Option<Error>,
    final_transcript: Option<Transcript>,
}

impl Session {
    /// Builds the session and, when the human is Player II, lets the engine
    /// make the first move.
    pub fn create(id: String, req: CreateSession, registry: &StrategyRegistry) -> Result<Self, ApiError> {
        let space = Space::parse(&req.space)?;
        let human = req.role.player();
        let engine = registry.build(&req.engine, human.other(), &space)?;
        let tf = TestFamily::parse(&req.test_family, &space)?;
        let (p1, p2) = match human {
            Player::One => ("human".to_string(), engine.name()),
            Player::Two => (engine.name(), "human".to_string()),
        };
        let game = Game::new(space, req.rounds_n, req.seed, p1, p2)?;
        let mut s = Session {
            id,
            request: req,
            human,
            engine,
            game,
            tf,
            last_engine_error: None,
            final_transcript: None,
        };
        s.engine_turns()?;
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn space(&self) -> &Space {
        self.game.space()
    }

    pub fn transcript(&self) -> &Transcript {
        self.game.transcript()
    }

    pub fn status(&self) -> Status {
        match self.game.to_move() {
            None => Status::Finished,
            Some(p) if p == self.human => Status::AwaitingHuman,
            Some(_) => Status::AwaitingEngine,
        }
    }

    fn engine_turns(&mut self) -> Result<(), ApiError> {
        while self.status() == Status::AwaitingEngine {
            if let Err(e) = self.game.play_strategy(self.engine.as_mut()) {
                self.last_engine_error = Some(e.clone());
                return Err(e.into());
            }
        }
        self.last_engine_error = None;
        if self.status() == Status::Finished && self.final_transcript.is_none() {
            let mut t = self.game.transcript().clone();
            t.certify(&self.tf)?;
            self.final_transcript = Some(t);
        }
        Ok(())
    }

    fn decode(&self, payload: &MovePayload) -> Result<Vec<Region>, ApiError> {
        payload
            .sets
            .iter()
            .map(|v| self.space().region_from_json(v).map_err(ApiError::from))
            .collect()
    }

    /// Legality check shared by [`Session::apply_move`] and
    /// [`Session::preview`]. A Player II family that leaves some `U`
    /// unrefined is rejected with that `U`.
    fn check(&self, payload: &MovePayload) -> Result<MoveFamily, ApiError> {
        match self.status() {
            Status::AwaitingHuman => {}
            Status::Finished => return Err(ApiError::wrong_turn("game is finished")),
            Status::AwaitingEngine => return Err(ApiError::wrong_turn("waiting for the engine")),
        }
        let sets = self.decode(payload)?;
        if self.human == Player::Two && !sets.is_empty() {
            let a = self.transcript().moves.last().expect("Player I has moved");
            if let Ok(Some(i)) = first_unrefined(self.space(), a.sets(), &sets) {
                return Err(ApiError::unrefined(self.game.round(), i, &a.sets()[i]));
            }
        }
        Ok(self.game.check(self.human, sets)?)
    }

    /// Records a legal human move and computes the engine's reply.
    pub fn apply_move(&mut self, payload: &MovePayload) -> Result<(), ApiError> {
        let fam = self.check(payload)?;
        self.game.play(self.human, fam.sets().to_vec())?;
        self.engine_turns()
    }

    /// A legal move for the human: the whole space for Player I, the
    /// canonical refinement of every `U` for Player II.
    pub fn hint(&self) -> Result<Vec<Region>, ApiError> {
        if self.status() != Status::AwaitingHuman {
            return Err(ApiError::wrong_turn("no move is expected from the human"));
        }
        let sets = match self.human {
            Player::One => vec![self.space().whole()],
            Player::Two => {
                let a = self.transcript().moves.last().expect("Player I has moved");
                a.sets()
                    .iter()
                    .map(|u| self.space().canonical_refinement(u))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        self.game.check(self.human, sets.clone())?;
        Ok(sets)
    }

    /// Which test regions a candidate Player II family would newly cover,
    /// per `k`. Never changes the session.
    pub fn preview(&self, payload: &MovePayload) -> Result<Value, ApiError> {
        let fam = self.check(payload)?;
        let mut bs = self.transcript().player_two_moves();
        let before = coverage(self.space(), &bs, &self.tf)?;
        if fam.owner() == Player::Two {
            bs.push(fam);
        }
        let after = coverage(self.space(), &bs, &self.tf)?;
        let newly: Vec<Value> = after
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let idx: Vec<usize> = row
                    .iter()
                    .enumerate()
                    .filter(|&(i, &c)| c && !before.get(k).is_some_and(|b| b[i]))
                    .map(|(i, _)| i)
                    .collect();
                json!({ "k": k, "newlyCovered": idx, "covered": row.iter().filter(|&&c| c).count() })
            })
            .collect();
        Ok(json!({ "legal": true, "byK": newly }))
    }

    fn coverage_json(&self) -> Result<Value, ApiError> {
        let cov = coverage(self.space(), &self.transcript().player_two_moves(), &self.tf)?;
        let by_k: Vec<Value> = cov
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let idx: Vec<usize> = row.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i).collect();
                json!({ "k": k, "covered": idx, "count": idx.len(), "total": row.len() })
            })
            .collect();
        Ok(json!({
            "testFamily": self.tf.descriptor(),
            "tests": self.tf.regions().iter().map(region_to_json).collect::<Vec<_>>(),
            "byK": by_k,
        }))
    }

    /// Exact measure of each `∪B_n` and of their union; Cantor cubes only.
    fn measure_json(&self) -> Option<Value> {
        if !self.space().is_cantor() {
            return None;
        }
        let cylinders = |b: &MoveFamily| -> Vec<_> {
            b.sets()
                .iter()
                .filter_map(Region::as_clopen)
                .flat_map(|s| s.cylinders().to_vec())
                .collect()
        };
        let bs = self.transcript().player_two_moves();
        let per_round: Vec<String> = bs
            .iter()
            .map(|b| ClopenSet::normalize(cylinders(b)).measure().to_string())
            .collect();
        let union = ClopenSet::normalize(bs.iter().flat_map(cylinders));
        let total: BigRational = union.measure();
        Some(json!({
            "perRound": per_round,
            "total": total.to_string(),
            "complementWitness": union.complement_witness().map(|c| region_to_json(&Region::cylinder(c))),
        }))
    }

    pub fn state(&self) -> Result<Value, ApiError> {
        let transcript = self.final_transcript.as_ref().unwrap_or(self.game.transcript());
        let tj = transcript.to_json();
        Ok(json!({
            "id": self.id,
            "space": self.space().to_string(),
            "role": self.request.role.as_str(),
            "engine": self.request.engine,
            "seed": self.request.seed,
            "roundsN": self.request.rounds_n,
            "round": self.game.round(),
            "status": self.status().as_str(),
            "toMove": self.game.to_move(),
            "transcript": tj,
            "coverage": self.coverage_json()?,
            "measure": self.measure_json(),
            "certificates": self.final_transcript.as_ref().map(|_| tj["certificates"].clone()),
            "lastEngineError": self.last_engine_error.as_ref().map(|e| json!({
                "code": e.code(),
                "exitCode": e.exit_code(),
                "message": e.to_string(),
            })),
        }))
    }
}
