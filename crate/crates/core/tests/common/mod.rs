//! Brute-force reference implementations over finitely many coordinates.
#![allow(dead_code)]

use std::collections::BTreeSet;

use openopen_core::spaces::{ClopenSet, Cylinder, Region, VietorisBasic};
use rand::Rng;

/// A point of `2^coords`, bit `i` giving coordinate `coords[i]`.
pub type Pt = u32;

pub fn cyl_contains(c: &Cylinder, coords: &[u32], p: Pt) -> bool {
    c.assignments().iter().all(|&(k, b)| {
        let i = coords
            .iter()
            .position(|&x| x == k)
            .expect("coordinate outside the enumeration");
        ((p >> i) & 1 == 1) == b
    })
}

pub fn contains(s: &ClopenSet, coords: &[u32], p: Pt) -> bool {
    s.cylinders().iter().any(|c| cyl_contains(c, coords, p))
}

pub fn points(s: &ClopenSet, coords: &[u32]) -> BTreeSet<Pt> {
    (0..1u32 << coords.len()).filter(|&p| contains(s, coords, p)).collect()
}

pub fn region_points(r: &Region, coords: &[u32]) -> BTreeSet<Pt> {
    points(r.as_clopen().expect("clopen region"), coords)
}

pub fn random_cylinder(rng: &mut impl Rng, coords: &[u32]) -> Cylinder {
    let mut pairs = Vec::new();
    for &c in coords {
        if rng.gen_bool(0.5) {
            pairs.push((c, rng.gen::<bool>()));
        }
    }
    Cylinder::from_pairs(pairs).expect("distinct coordinates")
}

/// Union of up to `max_cyl` random cylinders over `coords`, possibly empty.
pub fn random_clopen(rng: &mut impl Rng, coords: &[u32], max_cyl: usize) -> ClopenSet {
    let n = rng.gen_range(0..=max_cyl);
    ClopenSet::normalize((0..n).map(|_| random_cylinder(rng, coords)))
}

/// Nonempty subsets of `2^coords` (as point bitmasks) lying in `v`.
pub fn vietoris_members(v: &VietorisBasic, coords: &[u32]) -> BTreeSet<u64> {
    let parts: Vec<BTreeSet<Pt>> = v.parts().iter().map(|p| region_points(p, coords)).collect();
    let union: BTreeSet<Pt> = parts.iter().flatten().copied().collect();
    let npts = 1u32 << coords.len();
    let mut out = BTreeSet::new();
    for s in 1u64..(1u64 << npts) {
        let pts: Vec<Pt> = (0..npts).filter(|&p| (s >> p) & 1 == 1).collect();
        if pts.iter().all(|p| union.contains(p)) && parts.iter().all(|part| pts.iter().any(|p| part.contains(p))) {
            out.insert(s);
        }
    }
    out
}
