//! Finite topological spaces given by an explicit lattice of open sets.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An open set of a finite space: sorted point indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteOpen(Vec<u32>);

impl FiniteOpen {
    pub fn new(points: impl IntoIterator<Item = u32>) -> Self {
        let set: BTreeSet<u32> = points.into_iter().collect();
        FiniteOpen(set.into_iter().collect())
    }

    pub fn points(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &FiniteOpen) -> bool {
        self.0.iter().all(|p| other.contains(*p))
    }

    pub fn intersect(&self, other: &FiniteOpen) -> FiniteOpen {
        FiniteOpen(self.0.iter().copied().filter(|p| other.contains(*p)).collect())
    }

    pub fn union(&self, other: &FiniteOpen) -> FiniteOpen {
        FiniteOpen::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn meets(&self, other: &FiniteOpen) -> bool {
        self.0.iter().any(|p| other.contains(*p))
    }
}

/// On-disk lattice format: `{"points": [...], "opens": [[0,1], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub points: Vec<String>,
    pub opens: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<FiniteOpen>,
}

impl FiniteSpace {
    /// Validates that the open sets form a topology: contains `∅` and the
    /// full set, closed under pairwise union and intersection.
    pub fn new(points: Vec<String>, opens: Vec<Vec<u32>>) -> Result<Self> {
        let n = points.len() as u32;
        if n == 0 {
            return Err(Error::config("finite space needs at least one point"));
        }
        let mut set: BTreeSet<FiniteOpen> = BTreeSet::new();
        for o in opens {
            if let Some(bad) = o.iter().find(|&&p| p >= n) {
                return Err(Error::config(format!("open set mentions point {bad} of {n}")));
            }
            set.insert(FiniteOpen::new(o));
        }
        let full = FiniteOpen::new(0..n);
        if !set.contains(&FiniteOpen::default()) {
            return Err(Error::config("lattice is missing the empty set"));
        }
        if !set.contains(&full) {
            return Err(Error::config("lattice is missing the full point set"));
        }
        let opens: Vec<FiniteOpen> = set.iter().cloned().collect();
        for a in &opens {
            for b in &opens {
                if !set.contains(&a.union(b)) {
                    return Err(Error::config(format!(
                        "lattice not closed under union: {:?} ∪ {:?}",
                        a.0, b.0
                    )));
                }
                if !set.contains(&a.intersect(b)) {
                    return Err(Error::config(format!(
                        "lattice not closed under intersection: {:?} ∩ {:?}",
                        a.0, b.0
                    )));
                }
            }
        }
        Ok(FiniteSpace { points, opens })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        let file: LatticeFile = serde_json::from_str(&text)?;
        FiniteSpace::new(file.points, file.opens)
    }

    pub fn point_count(&self) -> u32 {
        self.points.len() as u32
    }

    pub fn point_name(&self, p: u32) -> &str {
        &self.points[p as usize]
    }

    pub fn opens(&self) -> &[FiniteOpen] {
        &self.opens
    }

    pub fn is_open(&self, o: &FiniteOpen) -> bool {
        self.opens.binary_search(o).is_ok()
    }

    pub fn full(&self) -> FiniteOpen {
        FiniteOpen::new(0..self.point_count())
    }

    pub fn complement(&self, s: &FiniteOpen) -> FiniteOpen {
        FiniteOpen::new((0..self.point_count()).filter(|p| !s.contains(*p)))
    }

    /// Nonempty closed sets (complements of proper open sets).
    pub fn closed_sets(&self) -> impl Iterator<Item = FiniteOpen> + '_ {
        self.opens.iter().map(|o| self.complement(o)).filter(|c| !c.is_empty())
    }

    pub fn is_closed(&self, s: &FiniteOpen) -> bool {
        self.is_open(&self.complement(s))
    }

    /// Largest closed set contained in `s`.
    pub fn closed_kernel(&self, s: &FiniteOpen) -> FiniteOpen {
        self.closed_sets()
            .filter(|c| c.is_subset_of(s))
            .fold(FiniteOpen::default(), |acc, c| acc.union(&c))
    }

    /// Smallest nonempty open subset of `u` (by size, then lexicographic).
    pub fn canonical_subset(&self, u: &FiniteOpen) -> Option<FiniteOpen> {
        self.opens
            .iter()
            .filter(|o| !o.is_empty() && o.is_subset_of(u))
            .min_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)))
            .cloned()
    }

    /// Nonempty open subsets of `u`.
    pub fn open_subsets<'a>(&'a self, u: &'a FiniteOpen) -> impl Iterator<Item = &'a FiniteOpen> {
        self.opens.iter().filter(move |o| !o.is_empty() && o.is_subset_of(u))
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            points: self.points.clone(),
            opens: self.opens.iter().map(|o| o.0.clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::new(vec!["a".into(), "b".into()], vec![vec![], vec![0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn lattice_validation() {
        assert!(sierpinski().is_open(&FiniteOpen::new([0])));
        let missing_union = FiniteSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![], vec![0], vec![1], vec![0, 1, 2]],
        );
        assert!(matches!(missing_union, Err(Error::Config(_))));
        let no_full = FiniteSpace::new(vec!["a".into(), "b".into()], vec![vec![], vec![0]]);
        assert!(no_full.is_err());
        let out_of_range = FiniteSpace::new(vec!["a".into()], vec![vec![], vec![0], vec![3]]);
        assert!(out_of_range.is_err());
    }

    #[test]
    fn closed_kernel_of_sierpinski() {
        let s = sierpinski();
        // closed sets: {b}, {a,b}
        assert_eq!(s.closed_kernel(&FiniteOpen::new([0])), FiniteOpen::default());
        assert_eq!(s.closed_kernel(&FiniteOpen::new([0, 1])), FiniteOpen::new([0, 1]));
        assert!(s.is_closed(&FiniteOpen::new([1])));
        assert!(!s.is_closed(&FiniteOpen::new([0])));
    }

    #[test]
    fn canonical_subset_smallest() {
        let s = sierpinski();
        assert_eq!(s.canonical_subset(&s.full()), Some(FiniteOpen::new([0])));
        assert_eq!(s.canonical_subset(&FiniteOpen::new([1])), None);
    }
}
