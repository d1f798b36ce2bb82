use std::path::Path;

use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{Player, Position, Strategy};
use crate::spaces::{region_to_json, Region, Space};

/// Replays a fixed list of moves, one per round.
#[derive(Clone, Debug)]
pub struct Scripted {
    player: Player,
    moves: Vec<Vec<Region>>,
    source: String,
}

impl Scripted {
    pub fn new(player: Player, moves: Vec<Vec<Region>>, source: impl Into<String>) -> Self {
        Scripted {
            player,
            moves,
            source: source.into(),
        }
    }

    /// Reads `{"moves": [[region, …], …]}` or a bare array of families.
    pub fn load(player: Player, path: &Path, space: &Space) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)?;
        let moves = decode_moves(&v, space)?;
        Ok(Scripted::new(player, moves, path.display().to_string()))
    }

    pub fn moves(&self) -> &[Vec<Region>] {
        &self.moves
    }
}

pub fn decode_moves(v: &Value, space: &Space) -> Result<Vec<Vec<Region>>> {
    let list = v
        .get("moves")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| Error::Json("script must be an array of families or {\"moves\": [...]}".into()))?;
    list.iter()
        .map(|fam| {
            fam.as_array()
                .ok_or_else(|| Error::Json("each scripted move must be an array of regions".into()))?
                .iter()
                .map(|r| space.region_from_json(r))
                .collect()
        })
        .collect()
}

pub fn encode_moves(moves: &[Vec<Region>]) -> Value {
    serde_json::json!({
        "moves": moves
            .iter()
            .map(|f| f.iter().map(region_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    })
}

impl Strategy for Scripted {
    fn name(&self) -> String {
        format!("scripted:{}", self.source)
    }

    fn player(&self) -> Player {
        self.player
    }

    fn next_move(&mut self, pos: &Position<'_>, _rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        let n = pos.round();
        self.moves
            .get(n)
            .cloned()
            .ok_or_else(|| Error::strategy(self.name(), format!("script has no move for round {n}")))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn precommitted(&self) -> Option<Vec<Vec<Region>>> {
        (self.player == Player::One).then(|| self.moves.clone())
    }
}
