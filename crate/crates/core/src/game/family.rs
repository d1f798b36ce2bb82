use crate::error::{Error, Result};
use crate::spaces::{Region, Space};

use super::Player;

/// A finite family of nonempty open sets played in one half-round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveFamily {
    owner: Player,
    sets: Vec<Region>,
}

impl MoveFamily {
    /// Deduplicates `sets` keeping first occurrences. Nonemptiness is checked
    /// by [`MoveFamily::validated`].
    pub fn new(owner: Player, sets: impl IntoIterator<Item = Region>) -> Self {
        let mut out: Vec<Region> = Vec::new();
        for s in sets {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        MoveFamily { owner, sets: out }
    }

    /// Builds a family and checks it against `space`: nonempty list, every
    /// set a nonempty region of the space, size within the family cap.
    pub fn validated(owner: Player, sets: Vec<Region>, space: &Space, round: usize) -> Result<Self> {
        let fam = MoveFamily::new(owner, sets);
        let illegal = |detail: String| Error::IllegalMove {
            round,
            player: owner,
            detail,
        };
        if fam.sets.is_empty() {
            return Err(illegal("empty family".into()));
        }
        let cap = space.caps().family;
        if fam.sets.len() > cap {
            return Err(Error::CapExceeded {
                what: "family size",
                limit: cap,
                actual: fam.sets.len(),
            });
        }
        for s in &fam.sets {
            match space.is_nonempty(s) {
                Ok(true) => {}
                Ok(false) => return Err(illegal(format!("empty set {s}"))),
                Err(e) => return Err(illegal(e.to_string())),
            }
        }
        Ok(fam)
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn sets(&self) -> &[Region] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Index of the first `U` in `a` that no `V` in `b` refines.
pub fn first_unrefined(space: &Space, a: &[Region], b: &[Region]) -> Result<Option<usize>> {
    'outer: for (i, u) in a.iter().enumerate() {
        for v in b {
            if space.subset(v, u)? {
                continue 'outer;
            }
        }
        return Ok(Some(i));
    }
    Ok(None)
}

/// Every `U` in `a` has some `V` in `b` with `V ⊆ U`.
pub fn legal_reply(space: &Space, a: &MoveFamily, b: &MoveFamily) -> Result<bool> {
    if a.owner != Player::One || b.owner != Player::Two {
        return Err(Error::config(
            "legal_reply expects a Player I family and a Player II family",
        ));
    }
    Ok(first_unrefined(space, &a.sets, &b.sets)?.is_none())
}
