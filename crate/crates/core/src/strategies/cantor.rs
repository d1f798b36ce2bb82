use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;

use super::support::{first_cylinder, require_cantor};
use crate::error::{Error, Result};
use crate::game::{Player, Position, Strategy};
use crate::spaces::clopen::full_assignments;
use crate::spaces::{Region, Space};

/// What to do when `J_n` grows past the coordinate cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overflow {
    Error,
    /// Keep the canonically first `cap` coordinates.
    Truncate,
}

/// Player I on a Cantor cube: after `B_{n-1}` pick the first cylinder `W_q`
/// of each `Q`, let `J_n` collect their domains, and play every full cylinder
/// over `J_n`.
#[derive(Clone, Debug)]
pub struct CantorPlayerOne {
    overflow: Overflow,
    cap: Option<usize>,
}

impl Default for CantorPlayerOne {
    fn default() -> Self {
        CantorPlayerOne {
            overflow: Overflow::Error,
            cap: None,
        }
    }
}

impl CantorPlayerOne {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn truncating(cap: usize) -> Self {
        CantorPlayerOne {
            overflow: Overflow::Truncate,
            cap: Some(cap),
        }
    }

    /// `J_n` for the position (before any cap is applied).
    pub fn index_set(pos: &Position<'_>) -> Result<BTreeSet<u32>> {
        let mut j = BTreeSet::new();
        for b in pos.player_two_moves() {
            for q in b.sets() {
                j.extend(first_cylinder("cantor-p1", q)?.domain());
            }
        }
        Ok(j)
    }

    fn limit(&self, space: &Space) -> usize {
        let caps = space.caps();
        let family_bits = usize::BITS - 1 - caps.family.leading_zeros();
        self.cap
            .unwrap_or(caps.cantor_coords)
            .min(caps.cantor_coords)
            .min(family_bits as usize)
    }

    /// The capped index set actually used for the next move.
    pub fn effective_index_set(&self, pos: &Position<'_>) -> Result<Vec<u32>> {
        let j = Self::index_set(pos)?;
        let limit = self.limit(pos.space);
        if j.len() > limit {
            match self.overflow {
                Overflow::Error => {
                    return Err(Error::CapExceeded {
                        what: "Cantor index set J_n",
                        limit,
                        actual: j.len(),
                    })
                }
                Overflow::Truncate => return Ok(j.into_iter().take(limit).collect()),
            }
        }
        Ok(j.into_iter().collect())
    }
}

impl Strategy for CantorPlayerOne {
    fn name(&self) -> String {
        match (self.overflow, self.cap) {
            (Overflow::Truncate, Some(c)) => format!("cantor-p1:trunc:{c}"),
            _ => "cantor-p1".into(),
        }
    }

    fn player(&self) -> Player {
        Player::One
    }

    fn next_move(&mut self, pos: &Position<'_>, _rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        require_cantor(&self.name(), pos.space)?;
        let j = self.effective_index_set(pos)?;
        Ok(full_assignments(&j).map(Region::cylinder).collect())
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
