use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Player, Position, Strategy};
use crate::spaces::{Region, Space, SpaceKind};

/// Player II on a disjoint sum: every answer stays inside a single summand,
/// so finitely many plays touch finitely many summands and some summand is
/// never met.
#[derive(Clone, Debug, Default)]
pub struct SumPlayerTwo;

fn sum_parts(space: &Space) -> Result<(u32, &Space)> {
    match space.kind() {
        SpaceKind::DisjointSum { count, inner } => Ok((*count, inner)),
        _ => Err(Error::strategy("sum-p2", format!("needs a disjoint sum, got {space}"))),
    }
}

/// Summands met by any Player II move so far.
pub fn touched_summands(space: &Space, bs: impl IntoIterator<Item = impl AsRef<[Region]>>) -> Result<BTreeSet<u32>> {
    let (_, inner) = sum_parts(space)?;
    let mut out = BTreeSet::new();
    for fam in bs {
        for r in fam.as_ref() {
            if let Region::Sum(ps) = r {
                for (k, p) in ps {
                    if inner.is_nonempty(p)? {
                        out.insert(*k);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Lowest summand not in `touched`, as a whole-summand region.
pub fn untouched_witness(space: &Space, touched: &BTreeSet<u32>) -> Result<Option<Region>> {
    let (count, inner) = sum_parts(space)?;
    Ok((0..count)
        .find(|k| !touched.contains(k))
        .map(|k| Region::Sum(vec![(k, inner.whole())])))
}

impl Strategy for SumPlayerTwo {
    fn name(&self) -> String {
        "sum-p2".into()
    }

    fn player(&self) -> Player {
        Player::Two
    }

    fn next_move(&mut self, pos: &Position<'_>, _rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        let (count, inner) = sum_parts(pos.space)?;
        let a = pos
            .current_a()
            .ok_or_else(|| Error::strategy("sum-p2", "not Player II's turn"))?;
        let mut touched = touched_summands(pos.space, pos.player_two_moves().map(|f| f.sets()))?;
        let mut out = Vec::with_capacity(a.len());
        for u in a.sets() {
            let Region::Sum(ps) = u else {
                return Err(Error::strategy("sum-p2", format!("{u} is not a sum region")));
            };
            let mut chosen = None;
            for (k, p) in ps {
                if inner.is_nonempty(p)? {
                    chosen = Some((*k, inner.canonical_refinement(p)?));
                    break;
                }
            }
            let (k, v) = chosen.ok_or_else(|| Error::strategy("sum-p2", "empty region"))?;
            touched.insert(k);
            out.push(Region::Sum(vec![(k, v)]));
        }
        if touched.len() as u32 >= count {
            return Err(Error::strategy(
                "sum-p2",
                format!("all {count} summands touched; need more summands than sets played"),
            ));
        }
        Ok(out)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
