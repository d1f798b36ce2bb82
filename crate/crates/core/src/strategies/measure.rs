use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::support::{first_cylinder, history_support, require_cantor};
use crate::error::{Error, Result};
use crate::game::{Player, Position, Strategy};
use crate::spaces::{fresh_coordinates, Rational, Region};

/// Player II keeping `μ(∪B_n) < 2^{-(n+offset)}`: each `U ∈ A_n` is answered
/// by its first cylinder extended by fresh coordinates until
/// `μ(V) < 2^{-(n+offset)} / |A_n|`.
#[derive(Clone, Debug)]
pub struct MeasurePlayerTwo {
    offset: u32,
}

impl Default for MeasurePlayerTwo {
    fn default() -> Self {
        MeasurePlayerTwo { offset: 2 }
    }
}

impl MeasurePlayerTwo {
    pub fn new(offset: u32) -> Self {
        MeasurePlayerTwo { offset }
    }

    /// `2^{-(n+offset)}`.
    pub fn round_budget(&self, n: usize) -> Rational {
        Rational::new(BigInt::one(), BigInt::one() << (n as u32 + self.offset))
    }
}

impl Strategy for MeasurePlayerTwo {
    fn name(&self) -> String {
        if self.offset == 2 {
            "measure-p2".into()
        } else {
            format!("measure-p2:{}", self.offset)
        }
    }

    fn player(&self) -> Player {
        Player::Two
    }

    fn next_move(&mut self, pos: &Position<'_>, rng: &mut ChaCha8Rng) -> Result<Vec<Region>> {
        require_cantor("measure-p2", pos.space)?;
        let a = pos
            .current_a()
            .ok_or_else(|| Error::strategy("measure-p2", "not Player II's turn"))?;
        let per_set = self.round_budget(pos.round()) / Rational::from_integer(BigInt::from(a.len()));
        let base: Vec<_> = a
            .sets()
            .iter()
            .map(|u| first_cylinder("measure-p2", u))
            .collect::<Result<_>>()?;
        let needed: Vec<usize> = base
            .iter()
            .map(|c| {
                let mut e = 0usize;
                while c.measure() / Rational::from_integer(BigInt::one() << e) >= per_set {
                    e += 1;
                }
                e
            })
            .collect();
        let max_e = needed.iter().copied().max().unwrap_or(0);
        let mut used = history_support(pos);
        for c in &base {
            used.extend(c.domain());
        }
        let cap = pos.space.caps().support;
        if max_e > cap {
            return Err(Error::CapExceeded {
                what: "fresh coordinates per round",
                limit: cap,
                actual: max_e,
            });
        }
        let fresh = fresh_coordinates(&used, max_e);
        let mut out = Vec::with_capacity(base.len());
        for (c, e) in base.into_iter().zip(needed) {
            let mut v = c;
            for &coord in &fresh[..e] {
                v = v.with(coord, rng.gen()).expect("fresh coordinate");
            }
            out.push(Region::cylinder(v));
        }
        Ok(out)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
