use std::fmt;

use super::clopen::ClopenSet;
use super::cylinder::{CantorPoint, Cylinder};
use super::finite::FiniteOpen;

/// An open region of some space. Which variant is legal depends on the
/// owning [`Space`](super::Space); families and transcripts carry the space,
/// and every space operation rejects regions of the wrong shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Clopen(ClopenSet),
    Finite(FiniteOpen),
    Vietoris(VietorisBasic),
    /// A box: one region per product factor.
    Box(Vec<Region>),
    /// Sparse map from summand index to a region of that summand.
    Sum(Vec<(u32, Region)>),
}

impl Region {
    pub fn cylinder(c: Cylinder) -> Region {
        Region::Clopen(ClopenSet::cylinder(c))
    }

    /// `Region::cyl(&[(0, 1)])` is `W_{0↦1}`.
    pub fn cyl(pairs: &[(u32, u8)]) -> Region {
        Region::cylinder(Cylinder::of(pairs))
    }

    pub fn vietoris(parts: impl IntoIterator<Item = Region>) -> Region {
        Region::Vietoris(VietorisBasic::new(parts))
    }

    pub fn sum(parts: impl IntoIterator<Item = (u32, Region)>) -> Region {
        let mut parts: Vec<(u32, Region)> = parts.into_iter().collect();
        parts.sort();
        parts.dedup_by(|a, b| a.0 == b.0);
        Region::Sum(parts)
    }

    pub fn as_clopen(&self) -> Option<&ClopenSet> {
        match self {
            Region::Clopen(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_vietoris(&self) -> Option<&VietorisBasic> {
        match self {
            Region::Vietoris(v) => Some(v),
            _ => None,
        }
    }

    /// Coarseness measure used by coarse-first canonical orderings.
    pub fn weight(&self) -> usize {
        match self {
            Region::Clopen(s) => s.weight(),
            Region::Finite(_) => 0,
            Region::Vietoris(v) => v.parts.len().saturating_sub(1) + v.parts.iter().map(Region::weight).sum::<usize>(),
            Region::Box(fs) => fs.iter().map(Region::weight).sum(),
            Region::Sum(ps) => ps.len() + ps.iter().map(|(_, r)| r.weight()).sum::<usize>(),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Clopen(s) => write!(f, "{s}"),
            Region::Finite(o) => write!(f, "{:?}", o.points()),
            Region::Vietoris(v) => {
                write!(f, "⟨")?;
                for (i, p) in v.parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "⟩")
            }
            Region::Box(fs) => {
                for (i, r) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " × ")?;
                    }
                    write!(f, "({r})")?;
                }
                Ok(())
            }
            Region::Sum(ps) => {
                for (i, (k, r)) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ⊔ ")?;
                    }
                    write!(f, "{k}:({r})")?;
                }
                Ok(())
            }
        }
    }
}

/// Vietoris base set `⟨V_1, …, V_n⟩`: the closed sets contained in
/// `V_1 ∪ … ∪ V_n` that meet every `V_i`. Parts are sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VietorisBasic {
    parts: Vec<Region>,
}

impl VietorisBasic {
    pub fn new(parts: impl IntoIterator<Item = Region>) -> Self {
        let mut parts: Vec<Region> = parts.into_iter().collect();
        parts.sort();
        parts.dedup();
        VietorisBasic { parts }
    }

    pub fn parts(&self) -> &[Region] {
        &self.parts
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }
}

/// A point of an inner space, used for finite witness sets in hyperspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Cantor(CantorPoint),
    Finite(u32),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Cantor(p) => write!(f, "x{}", p.explicit()),
            Point::Finite(p) => write!(f, "p{p}"),
        }
    }
}
