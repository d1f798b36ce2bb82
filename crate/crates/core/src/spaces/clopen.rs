//! Finite unions of cylinders, the open-set currency of the Cantor cube.
//!
//! A [`ClopenSet`] is kept as an antichain: no member cylinder is contained in
//! another. Complementary pairs are *not* merged, so the representation is
//! canonical for a given input but not a minimal normal form; every predicate
//! below is decided semantically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::cylinder::Cylinder;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenSet {
    cylinders: Vec<Cylinder>,
    support: Vec<u32>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet::default()
    }

    pub fn whole() -> Self {
        ClopenSet::normalize(vec![Cylinder::whole()])
    }

    pub fn cylinder(c: Cylinder) -> Self {
        ClopenSet::normalize(vec![c])
    }

    /// Canonical form of a finite union: drops duplicates and every cylinder
    /// contained in another member, then sorts.
    pub fn normalize(raw: impl IntoIterator<Item = Cylinder>) -> Self {
        let mut raw: Vec<Cylinder> = raw.into_iter().collect();
        raw.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        raw.dedup();
        let mut kept: Vec<Cylinder> = Vec::with_capacity(raw.len());
        for c in raw {
            if !kept.iter().any(|d| c.is_subset_of(d)) {
                kept.push(c);
            }
        }
        kept.sort();
        let support: BTreeSet<u32> = kept.iter().flat_map(|c| c.domain()).collect();
        ClopenSet {
            cylinders: kept,
            support: support.into_iter().collect(),
        }
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.support.iter().copied().collect()
    }

    pub fn support_slice(&self) -> &[u32] {
        &self.support
    }

    pub fn is_nonempty(&self) -> bool {
        !self.cylinders.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.cylinders.len() == 1 && self.cylinders[0].is_whole()
    }

    /// Canonically first cylinder of the normal form.
    pub fn first_cylinder(&self) -> Option<&Cylinder> {
        self.cylinders.first()
    }

    /// Total number of fixed assignments; used for coarse-first orderings.
    pub fn weight(&self) -> usize {
        self.cylinders.iter().map(Cylinder::len).sum()
    }

    /// Both sides are already antichains, so only cross pairs are compared.
    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        if other.cylinders.is_empty() {
            return self.clone();
        }
        if self.cylinders.is_empty() {
            return other.clone();
        }
        let mut kept: Vec<Cylinder> = self
            .cylinders
            .iter()
            .filter(|c| !other.cylinders.iter().any(|d| *c != d && c.is_subset_of(d)))
            .cloned()
            .collect();
        kept.extend(
            other
                .cylinders
                .iter()
                .filter(|d| !self.cylinders.iter().any(|c| d.is_subset_of(c)))
                .cloned(),
        );
        kept.sort();
        let support: BTreeSet<u32> = self.support.iter().chain(&other.support).copied().collect();
        let support = if kept.len() == self.cylinders.len() + other.cylinders.len() {
            support.into_iter().collect()
        } else {
            kept.iter()
                .flat_map(|c| c.domain())
                .collect::<BTreeSet<u32>>()
                .into_iter()
                .collect()
        };
        ClopenSet {
            cylinders: kept,
            support,
        }
    }

    pub fn intersect(&self, other: &ClopenSet) -> ClopenSet {
        let mut out = Vec::new();
        for a in &self.cylinders {
            for b in &other.cylinders {
                if let Some(m) = a.merge(b) {
                    out.push(m);
                }
            }
        }
        ClopenSet::normalize(out)
    }

    pub fn meets(&self, other: &ClopenSet) -> bool {
        self.cylinders
            .iter()
            .any(|a| other.cylinders.iter().any(|b| a.compatible(b)))
    }

    pub fn intersect_cylinder(&self, c: &Cylinder) -> ClopenSet {
        ClopenSet::normalize(self.cylinders.iter().filter_map(|a| a.merge(c)))
    }

    /// Every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &ClopenSet) -> bool {
        self.cylinders.iter().all(|c| cylinder_covered(c, &other.cylinders))
    }

    pub fn same_points(&self, other: &ClopenSet) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn contains_cylinder(&self, c: &Cylinder) -> bool {
        cylinder_covered(c, &self.cylinders)
    }

    pub fn contains_point(&self, p: &super::cylinder::CantorPoint) -> bool {
        self.cylinders.iter().any(|c| c.contains_point(p))
    }

    /// `self \ other` as a union of pairwise disjoint cylinders (before
    /// normalization).
    pub fn difference(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet::normalize(self.difference_pieces(other))
    }

    /// Disjoint cylinders whose union is `self \ other`. Pieces from distinct
    /// members of `self` may overlap unless `self` is itself disjoint.
    pub fn difference_pieces(&self, other: &ClopenSet) -> Vec<Cylinder> {
        let mut out = Vec::new();
        for c in &self.cylinders {
            let mut pieces = vec![c.clone()];
            for d in &other.cylinders {
                pieces = pieces.iter().flat_map(|p| sharp(p, d)).collect();
                if pieces.is_empty() {
                    break;
                }
            }
            out.extend(pieces);
        }
        out
    }

    /// Exact uniform product measure.
    pub fn measure(&self) -> Rational {
        measure_of(self.cylinders.clone())
    }

    /// All full assignments over `support` not contained in `self`, as
    /// cylinders. Enumerates `2^|support|` assignments, so `cap` bounds
    /// `|support|`.
    pub fn complement_within(&self, support: &BTreeSet<u32>, cap: usize) -> Result<ClopenSet> {
        if !self.support.iter().all(|c| support.contains(c)) {
            return Err(Error::config(format!(
                "complement support {:?} does not contain set support {:?}",
                support, self.support
            )));
        }
        if support.len() > cap {
            return Err(Error::CapExceeded {
                what: "exhaustive support",
                limit: cap,
                actual: support.len(),
            });
        }
        let coords: Vec<u32> = support.iter().copied().collect();
        let out = full_assignments(&coords)
            .filter(|full| !self.cylinders.iter().any(|c| full.is_subset_of(c)))
            .collect::<Vec<_>>();
        Ok(ClopenSet::normalize(out))
    }

    /// A cylinder disjoint from `self`, found by splitting on coordinates of
    /// `self`; `None` iff `self` is the whole cube.
    pub fn complement_witness(&self) -> Option<Cylinder> {
        uncovered_below(Cylinder::whole(), &self.cylinders)
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cylinders.is_empty() {
            return write!(f, "∅");
        }
        for (i, c) in self.cylinders.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Iterates every total assignment over `coords` in lexicographic order.
pub fn full_assignments(coords: &[u32]) -> impl Iterator<Item = Cylinder> + '_ {
    let n = coords.len();
    (0u64..(1u64 << n)).map(move |mask| {
        Cylinder::from_pairs(
            coords
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, (mask >> (n - 1 - i)) & 1 == 1)),
        )
        .expect("distinct coordinates")
    })
}

/// `c \ d` as disjoint cylinders.
fn sharp(c: &Cylinder, d: &Cylinder) -> Vec<Cylinder> {
    if !c.compatible(d) {
        return vec![c.clone()];
    }
    let mut out = Vec::new();
    let mut prefix = c.clone();
    for &(coord, bit) in d.assignments() {
        if prefix.get(coord).is_some() {
            continue;
        }
        out.push(prefix.with(coord, !bit).expect("coordinate free"));
        prefix = prefix.with(coord, bit).expect("coordinate free");
    }
    out
}

/// Most frequent coordinate among the cylinders (ties: smallest).
fn split_coordinate(cyls: &[Cylinder]) -> Option<u32> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for c in cyls {
        for coord in c.domain() {
            *counts.entry(coord).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c)
}

/// Cofactor: restrict to `coord = bit` and drop the coordinate.
fn cofactor(cyls: &[Cylinder], coord: u32, bit: bool) -> Vec<Cylinder> {
    cyls.iter()
        .filter(|c| c.get(coord) != Some(!bit))
        .map(|c| c.without(coord))
        .collect()
}

fn mass_upper_bound(cyls: &[Cylinder]) -> f64 {
    cyls.iter().map(|c| 0.5f64.powi(c.len() as i32)).sum()
}

/// Is the union of `cyls` the whole cube?
fn tautology(cyls: &[Cylinder]) -> bool {
    if cyls.is_empty() {
        return false;
    }
    if cyls.iter().any(Cylinder::is_whole) {
        return true;
    }
    if mass_upper_bound(cyls) < 1.0 - 1e-12 {
        return false;
    }
    let x = split_coordinate(cyls).expect("non-whole cylinders have coordinates");
    tautology(&cofactor(cyls, x, false)) && tautology(&cofactor(cyls, x, true))
}

fn cylinder_covered(c: &Cylinder, cyls: &[Cylinder]) -> bool {
    let reduced: Vec<Cylinder> = cyls
        .iter()
        .filter(|d| d.compatible(c))
        .map(|d| {
            Cylinder::from_pairs(
                d.assignments()
                    .iter()
                    .copied()
                    .filter(|&(coord, _)| c.get(coord).is_none()),
            )
            .expect("subset of a cylinder")
        })
        .collect();
    tautology(&reduced)
}

fn uncovered_below(c: Cylinder, cyls: &[Cylinder]) -> Option<Cylinder> {
    let relevant: Vec<&Cylinder> = cyls.iter().filter(|d| d.compatible(&c)).collect();
    if relevant.is_empty() {
        return Some(c);
    }
    if relevant.iter().any(|d| c.is_subset_of(d)) {
        return None;
    }
    let free: Vec<Cylinder> = relevant.iter().map(|d| (*d).clone()).collect();
    let x = split_coordinate(
        &free
            .iter()
            .map(|d| {
                Cylinder::from_pairs(
                    d.assignments()
                        .iter()
                        .copied()
                        .filter(|&(coord, _)| c.get(coord).is_none()),
                )
                .expect("subset")
            })
            .collect::<Vec<_>>(),
    )
    .expect("some free coordinate");
    let zero = c.with(x, false).expect("free");
    let one = c.with(x, true).expect("free");
    uncovered_below(zero, cyls).or_else(|| uncovered_below(one, cyls))
}

fn measure_of(cyls: Vec<Cylinder>) -> Rational {
    if cyls.is_empty() {
        return Rational::zero();
    }
    if cyls.iter().any(Cylinder::is_whole) {
        return Rational::one();
    }
    if cyls.len() == 1 {
        return cyls[0].measure();
    }
    let x = split_coordinate(&cyls).expect("coordinates");
    let half = Rational::new(1.into(), 2.into());
    let m0 = measure_of(cofactor(&cyls, x, false));
    let m1 = measure_of(cofactor(&cyls, x, true));
    (m0 + m1) * half
}
