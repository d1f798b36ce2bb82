use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;

use super::support::{first_cylinder, require_cantor};
use crate::error::{Error, Result};
use crate::game::{MoveFamily, Player, Position, Strategy};
use crate::spaces::{fresh_coordinate, Region};

/// Player II against a Player I committed in advance to `A_0, …, A_{N-1}`:
/// choose a coordinate `α` outside every chosen cylinder's domain and play
/// `W_q ∩ W_{α↦1}`, so nothing played ever meets `W_{α↦0}`.
#[derive(Clone, Debug)]
pub struct DiagonalPlayerTwo {
    precommitted: Vec<Vec<Region>>,
    alpha: u32,
}

impl DiagonalPlayerTwo {
    pub fn new(precommitted: Vec<Vec<Region>>) -> Result<Self> {
        let mut used = BTreeSet::new();
        for fam in &precommitted {
            for u in fam {
                used.extend(first_cylinder("diagonal-p2", u)?.domain());
            }
        }
        let alpha = fresh_coordinate(&used);
        Ok(DiagonalPlayerTwo { precommitted, alpha })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// `W_{α↦0}`, the region no played set meets.
    pub fn witness(&self) -> Region {
        Region::cylinder(crate::spaces::Cylinder::from_pairs([(self.alpha, false)]).expect("single assignment"))
    }
}

impl Strategy for DiagonalPlayerTwo {
    fn name(&self) -> String {
        "diagonal-p2".into()
    }

    fn player(&self) -> Player {
        Player::Two
    }

    fn next_move(&mut self, pos: &Position<'_>, _rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        require_cantor("diagonal-p2", pos.space)?;
        let n = pos.round();
        let a = pos
            .current_a()
            .ok_or_else(|| Error::strategy("diagonal-p2", "not Player II's turn"))?;
        let expected = self
            .precommitted
            .get(n)
            .ok_or_else(|| Error::strategy("diagonal-p2", format!("no precommitted move for round {n}")))?;
        if MoveFamily::new(Player::One, expected.iter().cloned()).sets() != a.sets() {
            return Err(Error::strategy(
                "diagonal-p2",
                format!("Player I deviated from the precommitted sequence at round {n}"),
            ));
        }
        a.sets()
            .iter()
            .map(|u| {
                let q = first_cylinder("diagonal-p2", u)?;
                q.with(self.alpha, true)
                    .map(Region::cylinder)
                    .ok_or_else(|| Error::strategy("diagonal-p2", format!("{q} already fixes {}", self.alpha)))
            })
            .collect()
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
