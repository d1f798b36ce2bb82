use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::spaces::{region_to_json, Region, Space};

/// A finite, canonically ordered family of nonempty regions standing for a
/// member of a club filter, with the trace of how it was built.
#[derive(Clone, Debug)]
pub struct FilterElement {
    space: Space,
    sets: Vec<Region>,
    provenance: Vec<String>,
    /// Members that are unions of several cylinders.
    multi: usize,
}

/// Coarse first: fewer fixed assignments, then the structural order.
pub fn canonical_order(a: &Region, b: &Region) -> Ordering {
    a.weight().cmp(&b.weight()).then_with(|| a.cmp(b))
}

/// Two regions denote the same set. Single cylinders and Vietoris basics
/// (part-set equality) compare structurally.
pub(crate) fn same_set(space: &Space, a: &Region, b: &Region) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    match (a, b) {
        (Region::Clopen(x), Region::Clopen(y)) if x.cylinders().len() == 1 && y.cylinders().len() == 1 => Ok(false),
        (Region::Clopen(_), Region::Clopen(_)) | (Region::Finite(_), Region::Finite(_)) => space.same_points(a, b),
        _ => Ok(false),
    }
}

impl FilterElement {
    /// Drops empty regions, removes duplicates and sorts canonically.
    pub fn new(space: &Space, sets: impl IntoIterator<Item = Region>, provenance: Vec<String>) -> Result<Self> {
        let mut el = FilterElement {
            space: space.clone(),
            sets: Vec::new(),
            provenance,
            multi: 0,
        };
        let mut raw: Vec<Region> = sets.into_iter().collect();
        raw.sort_by(canonical_order);
        raw.dedup();
        for r in raw {
            el.insert_sorted_unchecked(r)?;
        }
        Ok(el)
    }

    fn insert_sorted_unchecked(&mut self, r: Region) -> Result<bool> {
        if !self.space.is_nonempty(&r)? || self.position(&r)?.is_some() {
            return Ok(false);
        }
        let at = self
            .sets
            .binary_search_by(|x| canonical_order(x, &r))
            .unwrap_or_else(|e| e);
        if matches!(&r, Region::Clopen(c) if c.cylinders().len() > 1) {
            self.multi += 1;
        }
        self.sets.insert(at, r);
        Ok(true)
    }

    /// Adds `r` unless it is empty or already present; reports whether it was
    /// added.
    pub fn insert(&mut self, r: Region) -> Result<bool> {
        self.insert_sorted_unchecked(r)
    }

    /// Index of a member denoting the same set as `r`.
    pub fn position(&self, r: &Region) -> Result<Option<usize>> {
        if let Ok(i) = self.sets.binary_search_by(|x| canonical_order(x, r)) {
            return Ok(Some(i));
        }
        let semantic = match r {
            Region::Clopen(s) => s.cylinders().len() > 1 || self.multi > 0,
            Region::Finite(_) => true,
            _ => false,
        };
        if !semantic {
            return Ok(None);
        }
        for (i, x) in self.sets.iter().enumerate() {
            if same_set(&self.space, x, r)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, r: &Region) -> Result<bool> {
        Ok(self.position(r)?.is_some())
    }

    pub fn space(&self) -> &Space {
        &self.space
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

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn push_provenance(&mut self, line: impl Into<String>) {
        self.provenance.push(line.into());
    }

    /// A pair whose nonempty intersection is missing, if any.
    pub fn intersection_gap(&self) -> Result<Option<(Region, Region)>> {
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                let m = self.space.intersect(a, b)?;
                if self.space.is_nonempty(&m)? && !self.contains(&m)? {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Every member of `self` is (semantically) a member of `other`.
    pub fn is_subfamily_of(&self, other: &FilterElement) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::CrossSpace(format!("{} vs {}", self.space, other.space)));
        }
        for r in &self.sets {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_family(&self, other: &FilterElement) -> Result<bool> {
        Ok(self.len() == other.len() && self.is_subfamily_of(other)? && other.is_subfamily_of(self)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.to_string(),
            "sets": self.sets.iter().map(region_to_json).collect::<Vec<_>>(),
            "provenance": self.provenance,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space = Space::parse(
            v.get("space")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Json("filter element without space".into()))?,
        )?;
        let sets = v
            .get("sets")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("filter element without sets".into()))?
            .iter()
            .map(|r| space.region_from_json(r))
            .collect::<Result<Vec<_>>>()?;
        let provenance = v
            .get("provenance")
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
            .unwrap_or_default();
        FilterElement::new(&space, sets, provenance)
    }
}

/// Closes `el` under nonempty pairwise intersections, up to `cap` members.
pub fn intersection_closure(mut el: FilterElement, cap: usize) -> Result<FilterElement> {
    let space = el.space.clone();
    loop {
        let snapshot = el.sets.clone();
        let mut grew = false;
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let m = space.intersect(a, b)?;
                if el.insert(m)? {
                    grew = true;
                    if el.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "intersection closure",
                            limit: cap,
                            actual: el.len(),
                        });
                    }
                }
            }
        }
        if !grew {
            return Ok(el);
        }
    }
}
