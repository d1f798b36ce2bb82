//! Predicates on Vietoris base sets `⟨V_1, …, V_n⟩` over a Cantor cube or a
//! finite space.

use super::cylinder::CantorPoint;
use super::finite::FiniteOpen;
use super::region::{Point, Region, VietorisBasic};
use super::space::{Space, SpaceKind};
use crate::error::{Error, Result};

fn unsupported(inner: &Space) -> Error {
    Error::Unsupported(format!("hyperspace over {inner}"))
}

/// Over a Cantor cube a basic is nonempty iff every part is (pick one point
/// per part). Over a finite space the largest closed subset of `∪ parts`
/// must meet every part.
pub fn nonempty(inner: &Space, v: &VietorisBasic) -> Result<bool> {
    if v.parts().is_empty() {
        return Ok(false);
    }
    match inner.kind() {
        SpaceKind::Cantor { .. } => {
            for p in v.parts() {
                if !inner.is_nonempty(p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SpaceKind::Finite { lattice, .. } => {
            let parts = finite_parts(v)?;
            let union = parts.iter().fold(FiniteOpen::default(), |a, p| a.union(p));
            let kernel = lattice.closed_kernel(&union);
            Ok(parts.iter().all(|p| kernel.meets(p)))
        }
        _ => Err(unsupported(inner)),
    }
}

fn finite_parts(v: &VietorisBasic) -> Result<Vec<FiniteOpen>> {
    v.parts()
        .iter()
        .map(|p| match p {
            Region::Finite(o) => Ok(o.clone()),
            other => Err(Error::CrossSpace(format!("{other} is not a finite open set"))),
        })
        .collect()
}

/// `u ⊆ v` for nonempty basics. Cantor cube: `∪u ⊆ ∪v` and every part of `v`
/// contains a part of `u`. Finite space: checked over all closed sets.
pub fn subset(inner: &Space, u: &VietorisBasic, v: &VietorisBasic) -> Result<bool> {
    match inner.kind() {
        SpaceKind::Cantor { .. } => {
            let uu = u.union_of_parts(inner)?;
            let vv = v.union_of_parts(inner)?;
            if !inner.subset(&uu, &vv)? {
                return Ok(false);
            }
            for vi in v.parts() {
                let mut found = false;
                for uj in u.parts() {
                    if inner.subset(uj, vi)? {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SpaceKind::Finite { lattice, .. } => {
            let up = finite_parts(u)?;
            let vp = finite_parts(v)?;
            Ok(lattice
                .closed_sets()
                .filter(|a| finite_member(a, &up))
                .all(|a| finite_member(&a, &vp)))
        }
        _ => Err(unsupported(inner)),
    }
}

fn finite_member(a: &FiniteOpen, parts: &[FiniteOpen]) -> bool {
    let union = parts.iter().fold(FiniteOpen::default(), |acc, p| acc.union(p));
    a.is_subset_of(&union) && parts.iter().all(|p| a.meets(p))
}

/// `⟨U⟩ ∩ ⟨V⟩ = ⟨U_i ∩ ∪V, V_j ∩ ∪U⟩`.
pub fn intersect(inner: &Space, u: &VietorisBasic, v: &VietorisBasic) -> Result<VietorisBasic> {
    let uu = u.union_of_parts(inner)?;
    let vv = v.union_of_parts(inner)?;
    let mut parts = Vec::with_capacity(u.arity() + v.arity());
    for p in u.parts() {
        parts.push(inner.intersect(p, &vv)?);
    }
    for p in v.parts() {
        parts.push(inner.intersect(p, &uu)?);
    }
    Ok(VietorisBasic::new(parts))
}

/// Decides `u ∩ v ≠ ∅` and returns a finite witness set lying in both. Over a
/// Cantor cube the witness has one point per nonempty `U_i ∩ V_j`; over a
/// finite space it is the largest closed subset of `∪u ∩ ∪v`.
pub fn meets(inner: &Space, u: &VietorisBasic, v: &VietorisBasic) -> Result<Option<Vec<Point>>> {
    if !nonempty(inner, u)? || !nonempty(inner, v)? {
        return Ok(None);
    }
    match inner.kind() {
        SpaceKind::Cantor { .. } => {
            let mut points = Vec::new();
            let mut u_hit = vec![false; u.arity()];
            let mut v_hit = vec![false; v.arity()];
            for (i, ui) in u.parts().iter().enumerate() {
                for (j, vj) in v.parts().iter().enumerate() {
                    let m = inner.intersect(ui, vj)?;
                    let Region::Clopen(m) = m else {
                        return Err(unsupported(inner));
                    };
                    if let Some(c) = m.first_cylinder() {
                        points.push(Point::Cantor(CantorPoint::new(c.clone())));
                        u_hit[i] = true;
                        v_hit[j] = true;
                    }
                }
            }
            if u_hit.iter().all(|&h| h) && v_hit.iter().all(|&h| h) {
                points.sort();
                points.dedup();
                Ok(Some(points))
            } else {
                Ok(None)
            }
        }
        SpaceKind::Finite { lattice, .. } => {
            let up = finite_parts(u)?;
            let vp = finite_parts(v)?;
            let uu = up.iter().fold(FiniteOpen::default(), |a, p| a.union(p));
            let vv = vp.iter().fold(FiniteOpen::default(), |a, p| a.union(p));
            let kernel = lattice.closed_kernel(&uu.intersect(&vv));
            if finite_member(&kernel, &up) && finite_member(&kernel, &vp) {
                Ok(Some(kernel.points().iter().map(|&p| Point::Finite(p)).collect()))
            } else {
                Ok(None)
            }
        }
        _ => Err(unsupported(inner)),
    }
}

/// Direct membership of a finite point set in a basic: contained in the
/// union of the parts, meets every part, and (finite spaces) closed.
pub fn contains_finite_set(inner: &Space, v: &VietorisBasic, points: &[Point]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let inside = |p: &Point, r: &Region| -> Result<bool> {
        match (p, r) {
            (Point::Cantor(x), Region::Clopen(s)) => Ok(s.contains_point(x)),
            (Point::Finite(x), Region::Finite(o)) => Ok(o.contains(*x)),
            _ => Err(Error::CrossSpace(format!("point {p} vs region {r}"))),
        }
    };
    for p in points {
        let mut any = false;
        for r in v.parts() {
            if inside(p, r)? {
                any = true;
                break;
            }
        }
        if !any {
            return Ok(false);
        }
    }
    for r in v.parts() {
        let mut any = false;
        for p in points {
            if inside(p, r)? {
                any = true;
                break;
            }
        }
        if !any {
            return Ok(false);
        }
    }
    if let SpaceKind::Finite { lattice, .. } = inner.kind() {
        let set = FiniteOpen::new(points.iter().filter_map(|p| match p {
            Point::Finite(x) => Some(*x),
            Point::Cantor(_) => None,
        }));
        return Ok(lattice.is_closed(&set));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::finite::FiniteSpace;

    fn cantor() -> Space {
        Space::cantor()
    }

    fn vb(parts: &[&[(u32, u8)]]) -> VietorisBasic {
        VietorisBasic::new(parts.iter().map(|p| Region::cyl(p)))
    }

    #[test]
    fn nonempty_examples() {
        let c = cantor();
        assert!(nonempty(&c, &vb(&[&[]])).unwrap());
        let with_empty = VietorisBasic::new([Region::cyl(&[(0, 0)]), Region::Clopen(Default::default())]);
        assert!(!nonempty(&c, &with_empty).unwrap());
        assert!(nonempty(&c, &vb(&[&[(0, 0)], &[(0, 1)]])).unwrap());
    }

    #[test]
    fn subset_examples() {
        let c = cantor();
        let w = vb(&[&[(0, 1)]]);
        assert!(subset(&c, &w, &w).unwrap());
        assert!(subset(&c, &vb(&[&[(0, 0)], &[(0, 1)]]), &vb(&[&[]])).unwrap());
        assert!(!subset(&c, &vb(&[&[]]), &vb(&[&[(0, 0)]])).unwrap());
    }

    #[test]
    fn meets_examples() {
        let c = cantor();
        assert!(meets(&c, &vb(&[&[(0, 0)]]), &vb(&[&[(0, 1)]])).unwrap().is_none());
        let a = vb(&[&[(0, 0)], &[(1, 1)]]);
        let whole = vb(&[&[]]);
        let w = meets(&c, &a, &whole).unwrap().unwrap();
        assert!(contains_finite_set(&c, &a, &w).unwrap());
        assert!(contains_finite_set(&c, &whole, &w).unwrap());
        let w = meets(&c, &whole, &whole).unwrap().unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn finite_inner_space() {
        // Sierpinski space: opens ∅, {0}, {0,1}; closed sets {1}, {0,1}.
        let lat = FiniteSpace::new(vec!["a".into(), "b".into()], vec![vec![], vec![0], vec![0, 1]]).unwrap();
        let s = Space::from_lattice("sierpinski", lat);
        let open_a = VietorisBasic::new([Region::Finite(FiniteOpen::new([0]))]);
        // no nonempty closed set inside {a}
        assert!(!nonempty(&s, &open_a).unwrap());
        let whole = VietorisBasic::new([Region::Finite(FiniteOpen::new([0, 1]))]);
        assert!(nonempty(&s, &whole).unwrap());
        let both = VietorisBasic::new([
            Region::Finite(FiniteOpen::new([0])),
            Region::Finite(FiniteOpen::new([0, 1])),
        ]);
        // only {a,b} qualifies
        assert!(subset(&s, &both, &whole).unwrap());
        assert!(!subset(&s, &whole, &both).unwrap());
        let w = meets(&s, &both, &whole).unwrap().unwrap();
        assert_eq!(w, vec![Point::Finite(0), Point::Finite(1)]);
        assert!(!contains_finite_set(&s, &whole, &[Point::Finite(0)]).unwrap());
    }
}
