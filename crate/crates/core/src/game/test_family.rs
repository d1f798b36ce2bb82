use std::collections::BTreeSet;

use crate::descriptor::{parse_coords, parse_num};
use crate::error::{Error, Result};
use crate::spaces::clopen::full_assignments;
use crate::spaces::{Cylinder, Region, Space, SpaceKind};

/// Finite list of nonempty base regions standing in for "every open set"
/// when adjudicating density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestFamily {
    descriptor: String,
    regions: Vec<Region>,
}

impl TestFamily {
    pub fn new(descriptor: impl Into<String>, regions: impl IntoIterator<Item = Region>) -> Self {
        let mut out: Vec<Region> = Vec::new();
        for r in regions {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        TestFamily {
            descriptor: descriptor.into(),
            regions: out,
        }
    }

    pub fn empty() -> Self {
        TestFamily::new("none", [])
    }

    /// All cylinders with domain inside `coords` and at most `max_dom`
    /// assignments, coarse first.
    pub fn cylinders(coords: &[u32], max_dom: usize) -> Self {
        let desc = format!(
            "cyl:{}:{max_dom}",
            coords.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        );
        TestFamily::new(desc, cylinders_upto(coords, max_dom).into_iter().map(Region::cylinder))
    }

    /// Parses `depth:<d>` (also `depth-<d>`), `cyl:<J>:<m>`,
    /// `vietoris:<d>:<arity>` or `none` against `space`.
    pub fn parse(desc: &str, space: &Space) -> Result<Self> {
        let desc = desc.trim();
        let regions = if desc == "none" {
            Vec::new()
        } else if let Some(d) = desc.strip_prefix("depth:").or_else(|| desc.strip_prefix("depth-")) {
            let d: u32 = parse_num(d, "test depth")?;
            depth_family(space, d)?
        } else if let Some(rest) = desc.strip_prefix("cyl:") {
            let (j, m) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::config(format!("expected cyl:<J>:<maxDom>, got `{desc}`")))?;
            if !space.is_cantor() {
                return Err(Error::Unsupported(format!("cylinder test family on {space}")));
            }
            let coords = parse_coords(j)?;
            cylinders_upto(&coords, parse_num(m, "maxDom")?)
                .into_iter()
                .map(Region::cylinder)
                .collect()
        } else if let Some(rest) = desc.strip_prefix("vietoris:") {
            let (d, a) = rest
                .split_once(':')
                .ok_or_else(|| Error::config(format!("expected vietoris:<d>:<arity>, got `{desc}`")))?;
            vietoris_family(space, parse_num(d, "depth")?, parse_num(a, "arity")?)?
        } else {
            return Err(Error::config(format!("unknown test family `{desc}`")));
        };
        let cap = space.caps().closure;
        if regions.len() > cap {
            return Err(Error::CapExceeded {
                what: "test family",
                limit: cap,
                actual: regions.len(),
            });
        }
        for r in &regions {
            if !space.is_nonempty(r)? {
                return Err(Error::config(format!("test region {r} is empty")));
            }
        }
        Ok(TestFamily::new(desc, regions))
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }
}

/// Cylinders with domain inside `coords`, `|dom| ≤ max_dom`, sorted coarse
/// first and then lexicographically.
pub fn cylinders_upto(coords: &[u32], max_dom: usize) -> Vec<Cylinder> {
    let coords: Vec<u32> = coords.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = Vec::new();
    for size in 0..=max_dom.min(coords.len()) {
        let mut level = Vec::new();
        for dom in subsets_of_size(&coords, size) {
            level.extend(full_assignments(&dom));
        }
        level.sort();
        out.extend(level);
    }
    out
}

/// `k`-element subsets of `items` in lexicographic order of positions.
pub fn subsets_of_size(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

fn depth_family(space: &Space, d: u32) -> Result<Vec<Region>> {
    let coords: Vec<u32> = (0..d).collect();
    Ok(match space.kind() {
        SpaceKind::Cantor { .. } => cylinders_upto(&coords, d as usize)
            .into_iter()
            .map(Region::cylinder)
            .collect(),
        SpaceKind::Finite { lattice, .. } => lattice
            .opens()
            .iter()
            .filter(|o| !o.is_empty())
            .cloned()
            .map(Region::Finite)
            .collect(),
        SpaceKind::Hyperspace(_) => vietoris_family(space, d, 2)?,
        SpaceKind::Product(fs) => {
            let mut acc: Vec<Vec<Region>> = vec![Vec::new()];
            for f in fs {
                let fam = depth_family(f, d)?;
                let mut next = Vec::with_capacity(acc.len() * fam.len());
                for prefix in &acc {
                    for r in &fam {
                        let mut b = prefix.clone();
                        b.push(r.clone());
                        next.push(b);
                    }
                }
                if next.len() > space.caps().closure {
                    return Err(Error::CapExceeded {
                        what: "test family",
                        limit: space.caps().closure,
                        actual: next.len(),
                    });
                }
                acc = next;
            }
            acc.into_iter().map(Region::Box).collect()
        }
        SpaceKind::DisjointSum { count, inner } => {
            let fam = depth_family(inner, d)?;
            (0..*count)
                .flat_map(|k| fam.iter().map(move |r| Region::Sum(vec![(k, r.clone())])))
                .collect()
        }
    })
}

/// Nonempty Vietoris basics whose parts are inner depth-`d` test regions,
/// with between one and `arity` distinct parts.
fn vietoris_family(space: &Space, d: u32, arity: usize) -> Result<Vec<Region>> {
    let inner = space
        .hyperspace_inner()
        .ok_or_else(|| Error::Unsupported(format!("Vietoris test family on {space}")))?;
    let parts = depth_family(inner, d)?;
    let idx: Vec<u32> = (0..parts.len() as u32).collect();
    let mut out = Vec::new();
    for k in 1..=arity.min(parts.len()) {
        for choice in subsets_of_size(&idx, k) {
            let r = Region::vietoris(choice.iter().map(|&i| parts[i as usize].clone()));
            if space.is_nonempty(&r)? {
                out.push(r);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_sizes() {
        let c = Space::cantor();
        assert_eq!(TestFamily::parse("depth:4", &c).unwrap().len(), 81);
        assert_eq!(TestFamily::parse("depth-2", &c).unwrap().len(), 9);
        assert_eq!(TestFamily::parse("cyl:0,1:1", &c).unwrap().len(), 5);
        let e = Space::parse("exp(cantor)").unwrap();
        assert_eq!(TestFamily::parse("depth:2", &e).unwrap().len(), 45);
        assert_eq!(TestFamily::parse("vietoris:1:1", &e).unwrap().len(), 3);
        let s = Space::parse("sum(3,cantor)").unwrap();
        assert_eq!(TestFamily::parse("depth:1", &s).unwrap().len(), 9);
        let p = Space::parse("product(cantor,cantor)").unwrap();
        assert_eq!(TestFamily::parse("depth:1", &p).unwrap().len(), 9);
        assert!(TestFamily::parse("bogus", &c).is_err());
        assert!(TestFamily::parse("none", &c).unwrap().is_empty());
    }

    #[test]
    fn coarse_first_order() {
        let f = cylinders_upto(&[1, 0], 1);
        assert_eq!(f[0], Cylinder::whole());
        assert_eq!(f[1], Cylinder::of(&[(0, 0)]));
        assert_eq!(f.len(), 5);
    }
}
