use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::element::FilterElement;
use super::source::ClubSource;
use crate::error::{Error, Result};
use crate::game::{Player, Position, Strategy};
use crate::spaces::Region;

/// Player I compiled from a club-filter source: `A_0 = {X}`; after `B_n`,
/// `P_n = extend(B_n ∪ P_{n-1})` and `A_{n+1} = {V^i_j : i, j ≤ n}` where
/// `V^i_0, V^i_1, …` enumerates `P_i` canonically.
#[derive(Clone)]
pub struct BbbStrategy {
    source: Arc<dyn ClubSource>,
    cache: Vec<(Vec<Region>, FilterElement)>,
}

impl BbbStrategy {
    pub fn new(source: Arc<dyn ClubSource>) -> Self {
        BbbStrategy {
            source,
            cache: Vec::new(),
        }
    }

    /// `P_0, …, P_{n-1}` for the position, recomputed only where the history
    /// changed.
    pub fn elements(&mut self, pos: &Position<'_>) -> Result<&[(Vec<Region>, FilterElement)]> {
        let bs: Vec<&[Region]> = pos.player_two_moves().map(|b| b.sets()).collect();
        let keep = self
            .cache
            .iter()
            .zip(&bs)
            .take_while(|((cached, _), b)| cached.as_slice() == **b)
            .count();
        self.cache.truncate(keep);
        for b in &bs[keep..] {
            let mut seed: Vec<Region> = b.to_vec();
            if let Some((_, prev)) = self.cache.last() {
                seed.extend(prev.sets().iter().cloned());
            }
            let p = self.source.extend(&seed)?;
            self.cache.push((b.to_vec(), p));
        }
        Ok(&self.cache)
    }
}

impl Strategy for BbbStrategy {
    fn name(&self) -> String {
        format!("club-p1:{}", self.source.describe())
    }

    fn player(&self) -> Player {
        Player::One
    }

    fn next_move(&mut self, pos: &Position<'_>, _rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        if pos.space != self.source.space() {
            return Err(Error::CrossSpace(format!(
                "{} builds regions of {}, game is on {}",
                self.name(),
                self.source.space(),
                pos.space
            )));
        }
        let n = pos.round();
        if n == 0 {
            return Ok(vec![pos.space.whole()]);
        }
        let mut out: Vec<Region> = Vec::new();
        for (_, p) in self.elements(pos)? {
            for v in p.sets().iter().take(n) {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        let cap = pos.space.caps().family;
        if out.len() > cap {
            return Err(Error::CapExceeded {
                what: "family size",
                limit: cap,
                actual: out.len(),
            });
        }
        Ok(out)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
