use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::Position;
use crate::spaces::{Cylinder, Region, Space};

/// Every coordinate mentioned anywhere in the history.
pub fn history_support(pos: &Position<'_>) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for fam in pos.history {
        for r in fam.sets() {
            out.extend(pos.space.support(r));
        }
    }
    out
}

/// The canonical-first cylinder of a Cantor region.
pub fn first_cylinder(name: &str, r: &Region) -> Result<Cylinder> {
    match r {
        Region::Clopen(s) => s
            .first_cylinder()
            .cloned()
            .ok_or_else(|| Error::strategy(name, "empty region")),
        other => Err(Error::strategy(name, format!("{other} is not a Cantor region"))),
    }
}

pub fn require_cantor(name: &str, space: &Space) -> Result<()> {
    if space.is_cantor() {
        Ok(())
    } else {
        Err(Error::strategy(name, format!("needs a Cantor cube, got {space}")))
    }
}
