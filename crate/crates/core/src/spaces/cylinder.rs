use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::Rational;

/// A basic clopen set `W_f` of the Cantor cube, given by a finite partial
/// assignment `f` from coordinates to bits.
///
/// Assignments are kept sorted by coordinate, so the derived ordering is the
/// lexicographic order on sorted assignment lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    assignments: Vec<(u32, bool)>,
}

impl Cylinder {
    /// The empty assignment, denoting the whole cube.
    pub fn whole() -> Self {
        Cylinder::default()
    }

    /// Builds a cylinder from `(coordinate, bit)` pairs. Returns `None` when a
    /// coordinate is assigned both bits.
    pub fn from_pairs<I: IntoIterator<Item = (u32, bool)>>(pairs: I) -> Option<Self> {
        let mut assignments: Vec<(u32, bool)> = pairs.into_iter().collect();
        assignments.sort_unstable();
        assignments.dedup();
        if assignments.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(Cylinder { assignments })
    }

    /// Shorthand used heavily in tests: `Cylinder::of(&[(0, 1), (3, 0)])`.
    pub fn of(pairs: &[(u32, u8)]) -> Self {
        Cylinder::from_pairs(pairs.iter().map(|&(c, b)| (c, b != 0))).expect("contradictory cylinder literal")
    }

    pub fn assignments(&self) -> &[(u32, bool)] {
        &self.assignments
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn get(&self, coord: u32) -> Option<bool> {
        self.assignments
            .binary_search_by_key(&coord, |&(c, _)| c)
            .ok()
            .map(|i| self.assignments[i].1)
    }

    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.assignments.iter().map(|&(c, _)| c)
    }

    /// `W_self ⊆ W_other`, i.e. `other ⊆ self` as partial functions.
    pub fn is_subset_of(&self, other: &Cylinder) -> bool {
        other.assignments.iter().all(|&(c, b)| self.get(c) == Some(b))
    }

    /// Two cylinders meet iff their assignments agree on common coordinates.
    pub fn compatible(&self, other: &Cylinder) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.assignments, &other.assignments);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }

    /// Intersection of two cylinders; `None` on contradictory coordinates.
    pub fn merge(&self, other: &Cylinder) -> Option<Cylinder> {
        let (a, b) = (&self.assignments, &other.assignments);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        return None;
                    }
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some(Cylinder { assignments: out })
    }

    /// Adds one assignment; `None` if it contradicts an existing one.
    pub fn with(&self, coord: u32, bit: bool) -> Option<Cylinder> {
        match self.assignments.binary_search_by_key(&coord, |&(c, _)| c) {
            Ok(i) => (self.assignments[i].1 == bit).then(|| self.clone()),
            Err(i) => {
                let mut assignments = self.assignments.clone();
                assignments.insert(i, (coord, bit));
                Some(Cylinder { assignments })
            }
        }
    }

    pub fn without(&self, coord: u32) -> Cylinder {
        Cylinder {
            assignments: self.assignments.iter().copied().filter(|&(c, _)| c != coord).collect(),
        }
    }

    /// Keeps only the assignments on `coords`.
    pub fn restrict(&self, coords: &BTreeSet<u32>) -> Cylinder {
        Cylinder {
            assignments: self
                .assignments
                .iter()
                .copied()
                .filter(|(c, _)| coords.contains(c))
                .collect(),
        }
    }

    /// Renames coordinates through `map` (a bijection on its domain,
    /// identity elsewhere).
    pub fn rename(&self, map: impl Fn(u32) -> u32) -> Cylinder {
        Cylinder::from_pairs(self.assignments.iter().map(|&(c, b)| (map(c), b)))
            .expect("renaming by a bijection cannot contradict")
    }

    pub fn measure(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::one() << self.len())
    }

    /// Does the point (bits default to 0 off its support) lie in `W_self`?
    pub fn contains_point(&self, point: &CantorPoint) -> bool {
        self.assignments.iter().all(|&(c, b)| point.bit(c) == b)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{{")?;
        for (i, (c, b)) in self.assignments.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}↦{}", c, *b as u8)?;
        }
        write!(f, "}}")
    }
}

/// A point of the Cantor cube with finitely many explicit bits; every other
/// coordinate reads as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CantorPoint(Cylinder);

impl CantorPoint {
    pub fn new(bits: Cylinder) -> Self {
        CantorPoint(bits)
    }

    pub fn bit(&self, coord: u32) -> bool {
        self.0.get(coord).unwrap_or(false)
    }

    pub fn explicit(&self) -> &Cylinder {
        &self.0
    }
}

/// Smallest coordinate not contained in `used`.
pub fn fresh_coordinate(used: &BTreeSet<u32>) -> u32 {
    fresh_coordinates(used, 1)[0]
}

/// The `n` smallest coordinates not contained in `used`, ascending.
pub fn fresh_coordinates(used: &BTreeSet<u32>, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    let mut c = 0u32;
    while out.len() < n {
        if !used.contains(&c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_pairs_rejected() {
        assert!(Cylinder::from_pairs([(0, true), (0, false)]).is_none());
        assert_eq!(
            Cylinder::from_pairs([(3, true), (1, false), (3, true)]).unwrap(),
            Cylinder::of(&[(1, 0), (3, 1)])
        );
    }

    #[test]
    fn merge_and_compatibility() {
        let a = Cylinder::of(&[(0, 1)]);
        let b = Cylinder::of(&[(1, 1)]);
        assert_eq!(a.merge(&b), Some(Cylinder::of(&[(0, 1), (1, 1)])));
        assert_eq!(a.merge(&Cylinder::of(&[(0, 0)])), None);
        assert!(!a.compatible(&Cylinder::of(&[(0, 0), (4, 1)])));
    }

    #[test]
    fn subset_is_reverse_extension() {
        let f = Cylinder::of(&[(0, 1)]);
        let g = Cylinder::of(&[(0, 1), (1, 0)]);
        assert!(g.is_subset_of(&f));
        assert!(!f.is_subset_of(&g));
        assert!(f.is_subset_of(&Cylinder::whole()));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let mut v = vec![
            Cylinder::of(&[(0, 1)]),
            Cylinder::of(&[(0, 0), (1, 1)]),
            Cylinder::whole(),
            Cylinder::of(&[(0, 0)]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Cylinder::whole(),
                Cylinder::of(&[(0, 0)]),
                Cylinder::of(&[(0, 0), (1, 1)]),
                Cylinder::of(&[(0, 1)]),
            ]
        );
    }

    #[test]
    fn fresh_skips_used() {
        let used: BTreeSet<u32> = [0, 1, 3].into_iter().collect();
        assert_eq!(fresh_coordinate(&used), 2);
        assert_eq!(fresh_coordinates(&used, 3), vec![2, 4, 5]);
    }
}
