use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::support::history_support;
use crate::error::{Error, Result};
use crate::game::{Player, Position, Strategy};
use crate::spaces::{fresh_coordinates, Cylinder, Region, Space, SpaceKind};

/// A random sub-region of `u`: Cantor parts become their first cylinder
/// extended by up to `k` coordinates drawn from `pool` (existing or fresh),
/// finite parts a random open subset. Always a nonempty subset of `u`.
pub fn random_refinement(space: &Space, u: &Region, pool: &[u32], k: usize, rng: &mut ChaCha8Rng) -> Result<Region> {
    let r = match (space.kind(), u) {
        (SpaceKind::Cantor { bound }, Region::Clopen(s)) => {
            let c = s
                .first_cylinder()
                .ok_or_else(|| Error::strategy("random", "empty region"))?;
            let free: Vec<u32> = pool
                .iter()
                .copied()
                .filter(|x| c.get(*x).is_none() && bound.is_none_or(|b| *x < b))
                .collect();
            Region::cylinder(extend_randomly(c, &free, k, rng))
        }
        (SpaceKind::Finite { lattice, .. }, Region::Finite(o)) => {
            let subs: Vec<_> = lattice.open_subsets(o).collect();
            Region::Finite(
                (*subs
                    .choose(rng)
                    .ok_or_else(|| Error::strategy("random", "empty region"))?)
                .clone(),
            )
        }
        (SpaceKind::Hyperspace(inner), Region::Vietoris(v)) => {
            let parts = v
                .parts()
                .iter()
                .map(|p| random_refinement(inner, p, pool, k, rng))
                .collect::<Result<Vec<_>>>()?;
            Region::vietoris(parts)
        }
        (SpaceKind::Product(fs), Region::Box(rs)) => Region::Box(
            fs.iter()
                .zip(rs)
                .map(|(f, r)| random_refinement(f, r, pool, k, rng))
                .collect::<Result<_>>()?,
        ),
        (SpaceKind::DisjointSum { inner, .. }, Region::Sum(ps)) => {
            let mut live = Vec::new();
            for (i, p) in ps {
                if inner.is_nonempty(p)? {
                    live.push((*i, p));
                }
            }
            let (i, p) = *live
                .choose(rng)
                .ok_or_else(|| Error::strategy("random", "empty region"))?;
            Region::Sum(vec![(i, random_refinement(inner, p, pool, k, rng)?)])
        }
        _ => return Err(Error::CrossSpace(format!("{u} in {space}"))),
    };
    if space.is_nonempty(&r)? && space.subset(&r, u)? {
        Ok(r)
    } else {
        space.canonical_refinement(u)
    }
}

fn extend_randomly(c: &Cylinder, free: &[u32], k: usize, rng: &mut ChaCha8Rng) -> Cylinder {
    let m = rng.gen_range(0..=k.min(free.len()));
    let mut out = c.clone();
    for &coord in free.choose_multiple(rng, m) {
        out = out.with(coord, rng.gen()).expect("free coordinate");
    }
    out
}

/// Coordinates a random strategy may extend by this round: the history's
/// support plus `k` fresh ones shared by every set of the move.
fn round_pool(pos: &Position<'_>, k: usize) -> Vec<u32> {
    let used = history_support(pos);
    let mut pool: BTreeSet<u32> = used.clone();
    pool.extend(fresh_coordinates(&used, k));
    pool.into_iter().collect()
}

/// Answers each `U` with a seeded random refinement extending at most `k`
/// coordinates.
#[derive(Clone, Debug)]
pub struct RandomPlayerTwo {
    k: usize,
}

impl RandomPlayerTwo {
    pub fn new(k: usize) -> Self {
        RandomPlayerTwo { k }
    }
}

impl Strategy for RandomPlayerTwo {
    fn name(&self) -> String {
        format!("random-p2:{}", self.k)
    }

    fn player(&self) -> Player {
        Player::Two
    }

    fn next_move(&mut self, pos: &Position<'_>, rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        let a = pos
            .current_a()
            .ok_or_else(|| Error::strategy(self.name(), "not Player II's turn"))?;
        let pool = round_pool(pos, self.k);
        a.sets()
            .iter()
            .map(|u| random_refinement(pos.space, u, &pool, self.k, rng))
            .collect()
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Plays between one and `k` random refinements of the whole space.
#[derive(Clone, Debug)]
pub struct RandomPlayerOne {
    k: usize,
}

impl RandomPlayerOne {
    pub fn new(k: usize) -> Self {
        RandomPlayerOne { k: k.max(1) }
    }
}

impl Strategy for RandomPlayerOne {
    fn name(&self) -> String {
        format!("random-p1:{}", self.k)
    }

    fn player(&self) -> Player {
        Player::One
    }

    fn next_move(&mut self, pos: &Position<'_>, rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        let pool = round_pool(pos, self.k);
        let whole = pos.space.whole();
        let n = rng.gen_range(1..=self.k);
        (0..n)
            .map(|_| random_refinement(pos.space, &whole, &pool, self.k, rng))
            .collect()
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
