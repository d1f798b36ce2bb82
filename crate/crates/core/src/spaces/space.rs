use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::clopen::ClopenSet;
use super::cylinder::Cylinder;
use super::finite::{FiniteOpen, FiniteSpace};
use super::region::{Region, VietorisBasic};
use super::{vietoris, Rational};
use crate::descriptor::{call, parse_num, split_top_level};
use crate::error::{Error, Result};

/// Resource bounds. Exceeding any of them is an explicit error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest support enumerated exhaustively.
    pub support: usize,
    /// Largest family a strategy may emit.
    pub family: usize,
    /// Largest index set `J_n` of the Cantor strategy.
    pub cantor_coords: usize,
    /// Largest family produced by closure computations.
    pub closure: usize,
    /// Largest number of explored branches in the Kuratowski–Ulam tree.
    pub branches: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            support: 20,
            family: 4096,
            cantor_coords: 12,
            closure: 100_000,
            branches: 64,
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// `D^λ`; `bound` models a finite λ.
    Cantor {
        bound: Option<u32>,
    },
    Finite {
        source: String,
        lattice: FiniteSpace,
    },
    /// `exp(inner)` with the Vietoris topology; inner is Cantor or finite.
    Hyperspace(Space),
    Product(Vec<Space>),
    DisjointSum {
        count: u32,
        inner: Space,
    },
}

/// A decidably represented space plus the caps its operations obey.
#[derive(Clone, Debug)]
pub struct Space {
    kind: Arc<SpaceKind>,
    caps: Caps,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Space {}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            SpaceKind::Cantor { bound: None } => write!(f, "cantor"),
            SpaceKind::Cantor { bound: Some(b) } => write!(f, "cantor:{b}"),
            SpaceKind::Finite { source, .. } => write!(f, "finite:{source}"),
            SpaceKind::Hyperspace(inner) => write!(f, "exp({inner})"),
            SpaceKind::Product(fs) => {
                write!(f, "product(")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
            SpaceKind::DisjointSum { count, inner } => write!(f, "sum({count},{inner})"),
        }
    }
}

impl Space {
    pub fn new(kind: SpaceKind, caps: Caps) -> Result<Self> {
        if let SpaceKind::Hyperspace(inner) = &kind {
            if !matches!(inner.kind(), SpaceKind::Cantor { .. } | SpaceKind::Finite { .. }) {
                return Err(Error::Unsupported(format!(
                    "hyperspace over {inner}: only Cantor cubes and finite spaces"
                )));
            }
        }
        if let SpaceKind::Product(fs) = &kind {
            if fs.is_empty() {
                return Err(Error::config("product needs at least one factor"));
            }
        }
        if let SpaceKind::DisjointSum { count: 0, .. } = &kind {
            return Err(Error::config("sum needs at least one summand"));
        }
        Ok(Space {
            kind: Arc::new(kind),
            caps,
        })
    }

    pub fn cantor() -> Self {
        Space::new(SpaceKind::Cantor { bound: None }, Caps::default()).expect("valid")
    }

    pub fn hyperspace(inner: Space) -> Result<Self> {
        let caps = inner.caps;
        Space::new(SpaceKind::Hyperspace(inner), caps)
    }

    /// Parses `cantor`, `cantor:<bound>`, `exp(<inner>)`, `product(a,b,…)`,
    /// `sum(<n>,<inner>)` or `finite:<path>`.
    pub fn parse(desc: &str) -> Result<Self> {
        Space::parse_with_caps(desc, Caps::default())
    }

    pub fn parse_with_caps(desc: &str, caps: Caps) -> Result<Self> {
        let desc = desc.trim();
        if desc == "cantor" {
            return Space::new(SpaceKind::Cantor { bound: None }, caps);
        }
        if let Some(b) = desc.strip_prefix("cantor:") {
            let bound: u32 = parse_num(b, "cantor bound")?;
            return Space::new(SpaceKind::Cantor { bound: Some(bound) }, caps);
        }
        if let Some(path) = desc.strip_prefix("finite:") {
            let lattice = FiniteSpace::load(Path::new(path))?;
            return Space::new(
                SpaceKind::Finite {
                    source: path.to_string(),
                    lattice,
                },
                caps,
            );
        }
        if let Some((inner, rest)) = call(desc, "exp")? {
            if !rest.is_empty() {
                return Err(Error::config(format!("trailing input in space `{desc}`")));
            }
            let inner = Space::parse_with_caps(inner, caps)?;
            return Space::new(SpaceKind::Hyperspace(inner), caps);
        }
        if let Some((args, rest)) = call(desc, "product")? {
            if !rest.is_empty() {
                return Err(Error::config(format!("trailing input in space `{desc}`")));
            }
            let factors = split_top_level(args, ',')
                .into_iter()
                .map(|f| Space::parse_with_caps(f, caps))
                .collect::<Result<Vec<_>>>()?;
            return Space::new(SpaceKind::Product(factors), caps);
        }
        if let Some((args, rest)) = call(desc, "sum")? {
            let parts = split_top_level(args, ',');
            if !rest.is_empty() || parts.len() != 2 {
                return Err(Error::config(format!("expected sum(<n>,<space>), got `{desc}`")));
            }
            let count: u32 = parse_num(parts[0], "summand count")?;
            let inner = Space::parse_with_caps(parts[1], caps)?;
            return Space::new(SpaceKind::DisjointSum { count, inner }, caps);
        }
        Err(Error::config(format!("unknown space descriptor `{desc}`")))
    }

    pub fn from_lattice(source: &str, lattice: FiniteSpace) -> Self {
        Space::new(
            SpaceKind::Finite {
                source: source.to_string(),
                lattice,
            },
            Caps::default(),
        )
        .expect("finite spaces are always valid")
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn with_caps(&self, caps: Caps) -> Space {
        Space {
            kind: self.kind.clone(),
            caps,
        }
    }

    pub fn is_cantor(&self) -> bool {
        matches!(*self.kind, SpaceKind::Cantor { .. })
    }

    /// The inner space of a hyperspace.
    pub fn hyperspace_inner(&self) -> Option<&Space> {
        match &*self.kind {
            SpaceKind::Hyperspace(inner) => Some(inner),
            _ => None,
        }
    }

    pub fn whole(&self) -> Region {
        match &*self.kind {
            SpaceKind::Cantor { .. } => Region::Clopen(ClopenSet::whole()),
            SpaceKind::Finite { lattice, .. } => Region::Finite(lattice.full()),
            SpaceKind::Hyperspace(inner) => Region::vietoris([inner.whole()]),
            SpaceKind::Product(fs) => Region::Box(fs.iter().map(Space::whole).collect()),
            SpaceKind::DisjointSum { count, inner } => Region::sum((0..*count).map(|k| (k, inner.whole()))),
        }
    }

    pub fn empty(&self) -> Region {
        match &*self.kind {
            SpaceKind::Cantor { .. } => Region::Clopen(ClopenSet::empty()),
            SpaceKind::Finite { .. } => Region::Finite(FiniteOpen::default()),
            SpaceKind::Hyperspace(inner) => Region::vietoris([inner.empty()]),
            SpaceKind::Product(fs) => Region::Box(fs.iter().map(Space::empty).collect()),
            SpaceKind::DisjointSum { .. } => Region::Sum(Vec::new()),
        }
    }

    /// Checks that `r` has the shape this space expects.
    pub fn check_region(&self, r: &Region) -> Result<()> {
        let mismatch = || Error::CrossSpace(format!("region {r} is not a region of {self}"));
        match (&*self.kind, r) {
            (SpaceKind::Cantor { bound }, Region::Clopen(s)) => {
                if let (Some(b), Some(&max)) = (bound, s.support_slice().last()) {
                    if max >= *b {
                        return Err(Error::CrossSpace(format!("coordinate {max} outside cantor:{b}")));
                    }
                }
                Ok(())
            }
            (SpaceKind::Finite { lattice, .. }, Region::Finite(o)) => {
                if lattice.is_open(o) {
                    Ok(())
                } else {
                    Err(Error::CrossSpace(format!("{:?} is not open in {self}", o.points())))
                }
            }
            (SpaceKind::Hyperspace(inner), Region::Vietoris(v)) => {
                if v.parts().is_empty() {
                    return Err(Error::config("Vietoris basic needs at least one part"));
                }
                v.parts().iter().try_for_each(|p| inner.check_region(p))
            }
            (SpaceKind::Product(fs), Region::Box(rs)) if fs.len() == rs.len() => {
                fs.iter().zip(rs).try_for_each(|(f, r)| f.check_region(r))
            }
            (SpaceKind::DisjointSum { count, inner }, Region::Sum(ps)) => {
                for w in ps.windows(2) {
                    if w[0].0 >= w[1].0 {
                        return Err(Error::config("sum parts must be sorted by summand"));
                    }
                }
                for (k, r) in ps {
                    if k >= count {
                        return Err(Error::CrossSpace(format!("summand {k} of {count}")));
                    }
                    inner.check_region(r)?;
                }
                Ok(())
            }
            _ => Err(mismatch()),
        }
    }

    pub fn is_nonempty(&self, r: &Region) -> Result<bool> {
        self.check_region(r)?;
        self.nonempty_unchecked(r)
    }

    fn nonempty_unchecked(&self, r: &Region) -> Result<bool> {
        Ok(match (&*self.kind, r) {
            (SpaceKind::Cantor { .. }, Region::Clopen(s)) => s.is_nonempty(),
            (SpaceKind::Finite { .. }, Region::Finite(o)) => !o.is_empty(),
            (SpaceKind::Hyperspace(inner), Region::Vietoris(v)) => vietoris::nonempty(inner, v)?,
            (SpaceKind::Product(fs), Region::Box(rs)) => {
                for (f, r) in fs.iter().zip(rs) {
                    if !f.nonempty_unchecked(r)? {
                        return Ok(false);
                    }
                }
                true
            }
            (SpaceKind::DisjointSum { inner, .. }, Region::Sum(ps)) => {
                for (_, r) in ps {
                    if inner.nonempty_unchecked(r)? {
                        return Ok(true);
                    }
                }
                false
            }
            _ => return Err(Error::CrossSpace(format!("region {r} in {self}"))),
        })
    }

    /// Every point of `a` lies in `b`.
    pub fn subset(&self, a: &Region, b: &Region) -> Result<bool> {
        self.check_region(a)?;
        self.check_region(b)?;
        self.subset_unchecked(a, b)
    }

    fn subset_unchecked(&self, a: &Region, b: &Region) -> Result<bool> {
        if !self.nonempty_unchecked(a)? {
            return Ok(true);
        }
        Ok(match (&*self.kind, a, b) {
            (SpaceKind::Cantor { .. }, Region::Clopen(x), Region::Clopen(y)) => x.is_subset_of(y),
            (SpaceKind::Finite { .. }, Region::Finite(x), Region::Finite(y)) => x.is_subset_of(y),
            (SpaceKind::Hyperspace(inner), Region::Vietoris(u), Region::Vietoris(v)) => {
                if !vietoris::nonempty(inner, v)? {
                    return Ok(false);
                }
                vietoris::subset(inner, u, v)?
            }
            (SpaceKind::Product(fs), Region::Box(xs), Region::Box(ys)) => {
                for ((f, x), y) in fs.iter().zip(xs).zip(ys) {
                    if !f.subset_unchecked(x, y)? {
                        return Ok(false);
                    }
                }
                true
            }
            (SpaceKind::DisjointSum { inner, .. }, Region::Sum(xs), Region::Sum(ys)) => {
                for (k, x) in xs {
                    if !inner.nonempty_unchecked(x)? {
                        continue;
                    }
                    match ys.iter().find(|(j, _)| j == k) {
                        Some((_, y)) if inner.subset_unchecked(x, y)? => {}
                        _ => return Ok(false),
                    }
                }
                true
            }
            _ => return Err(Error::CrossSpace(format!("{a} vs {b} in {self}"))),
        })
    }

    pub fn same_points(&self, a: &Region, b: &Region) -> Result<bool> {
        Ok(self.subset(a, b)? && self.subset(b, a)?)
    }

    pub fn intersect(&self, a: &Region, b: &Region) -> Result<Region> {
        self.check_region(a)?;
        self.check_region(b)?;
        self.intersect_unchecked(a, b)
    }

    fn intersect_unchecked(&self, a: &Region, b: &Region) -> Result<Region> {
        Ok(match (&*self.kind, a, b) {
            (SpaceKind::Cantor { .. }, Region::Clopen(x), Region::Clopen(y)) => Region::Clopen(x.intersect(y)),
            (SpaceKind::Finite { .. }, Region::Finite(x), Region::Finite(y)) => Region::Finite(x.intersect(y)),
            (SpaceKind::Hyperspace(inner), Region::Vietoris(u), Region::Vietoris(v)) => {
                Region::Vietoris(vietoris::intersect(inner, u, v)?)
            }
            (SpaceKind::Product(fs), Region::Box(xs), Region::Box(ys)) => Region::Box(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.intersect_unchecked(x, y))
                    .collect::<Result<_>>()?,
            ),
            (SpaceKind::DisjointSum { inner, .. }, Region::Sum(xs), Region::Sum(ys)) => {
                let mut parts = Vec::new();
                for (k, x) in xs {
                    if let Some((_, y)) = ys.iter().find(|(j, _)| j == k) {
                        let m = inner.intersect_unchecked(x, y)?;
                        if inner.nonempty_unchecked(&m)? {
                            parts.push((*k, m));
                        }
                    }
                }
                Region::Sum(parts)
            }
            _ => return Err(Error::CrossSpace(format!("{a} vs {b} in {self}"))),
        })
    }

    pub fn meets(&self, a: &Region, b: &Region) -> Result<bool> {
        let m = self.intersect(a, b)?;
        self.nonempty_unchecked(&m)
    }

    /// Union of two regions of a Cantor cube or finite space.
    pub fn union(&self, a: &Region, b: &Region) -> Result<Region> {
        self.check_region(a)?;
        self.check_region(b)?;
        match (a, b) {
            (Region::Clopen(x), Region::Clopen(y)) => Ok(Region::Clopen(x.union(y))),
            (Region::Finite(x), Region::Finite(y)) => Ok(Region::Finite(x.union(y))),
            _ => Err(Error::Unsupported(format!("union of regions in {self}"))),
        }
    }

    /// A canonical nonempty base subset of a nonempty region: first cylinder
    /// of the normal form, smallest open, part-wise for Vietoris basics and
    /// boxes, lowest summand for sums.
    pub fn canonical_refinement(&self, u: &Region) -> Result<Region> {
        if !self.is_nonempty(u)? {
            return Err(Error::config(format!("cannot refine the empty region {u}")));
        }
        Ok(match (&*self.kind, u) {
            (SpaceKind::Cantor { .. }, Region::Clopen(s)) => {
                Region::cylinder(s.first_cylinder().expect("nonempty").clone())
            }
            (SpaceKind::Finite { lattice, .. }, Region::Finite(o)) => {
                Region::Finite(lattice.canonical_subset(o).expect("nonempty open"))
            }
            (SpaceKind::Hyperspace(inner), Region::Vietoris(v)) => {
                let parts = v
                    .parts()
                    .iter()
                    .map(|p| inner.canonical_refinement(p))
                    .collect::<Result<Vec<_>>>()?;
                let refined = Region::vietoris(parts);
                if self.nonempty_unchecked(&refined)? {
                    refined
                } else {
                    u.clone()
                }
            }
            (SpaceKind::Product(fs), Region::Box(rs)) => Region::Box(
                fs.iter()
                    .zip(rs)
                    .map(|(f, r)| f.canonical_refinement(r))
                    .collect::<Result<_>>()?,
            ),
            (SpaceKind::DisjointSum { inner, .. }, Region::Sum(ps)) => {
                let mut out = None;
                for (k, r) in ps {
                    if inner.nonempty_unchecked(r)? {
                        out = Some(Region::Sum(vec![(*k, inner.canonical_refinement(r)?)]));
                        break;
                    }
                }
                out.expect("nonempty sum region has a nonempty part")
            }
            _ => unreachable!("checked by is_nonempty"),
        })
    }

    /// Coordinates mentioned anywhere in the region (Cantor-based spaces).
    pub fn support(&self, r: &Region) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        collect_support(r, &mut out);
        out
    }

    /// Exact uniform product measure; Cantor cubes only.
    pub fn measure(&self, r: &Region) -> Result<Rational> {
        self.check_region(r)?;
        match r {
            Region::Clopen(s) if self.is_cantor() => Ok(s.measure()),
            _ => Err(Error::Unsupported(format!("measure on {self}"))),
        }
    }

    pub fn region_to_json(&self, r: &Region) -> Value {
        region_to_json(r)
    }

    pub fn region_from_json(&self, v: &Value) -> Result<Region> {
        let r = self.decode(v)?;
        self.check_region(&r)?;
        Ok(r)
    }

    fn decode(&self, v: &Value) -> Result<Region> {
        let bad = |what: &str| Error::Json(format!("expected {what} for {self}, got {v}"));
        match &*self.kind {
            SpaceKind::Cantor { .. } => {
                let cyls = v.as_array().ok_or_else(|| bad("array of cylinders"))?;
                let mut out = Vec::with_capacity(cyls.len());
                for c in cyls {
                    let pairs = c.as_array().ok_or_else(|| bad("cylinder array"))?;
                    let mut assignments = Vec::with_capacity(pairs.len());
                    for p in pairs {
                        let pair = p
                            .as_array()
                            .filter(|a| a.len() == 2)
                            .ok_or_else(|| bad("[coordinate, bit]"))?;
                        let coord = pair[0]
                            .as_u64()
                            .filter(|&c| c <= u32::MAX as u64)
                            .ok_or_else(|| bad("coordinate"))?;
                        let bit = match pair[1].as_u64() {
                            Some(0) => false,
                            Some(1) => true,
                            _ => return Err(bad("bit 0 or 1")),
                        };
                        assignments.push((coord as u32, bit));
                    }
                    out.push(
                        Cylinder::from_pairs(assignments)
                            .ok_or_else(|| Error::Json(format!("contradictory cylinder {c}")))?,
                    );
                }
                Ok(Region::Clopen(ClopenSet::normalize(out)))
            }
            SpaceKind::Finite { .. } => {
                let pts = v.as_array().ok_or_else(|| bad("array of points"))?;
                let pts = pts
                    .iter()
                    .map(|p| p.as_u64().map(|p| p as u32).ok_or_else(|| bad("point index")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Region::Finite(FiniteOpen::new(pts)))
            }
            SpaceKind::Hyperspace(inner) => {
                let parts = v
                    .get("parts")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("{\"parts\": [...]}"))?;
                let parts = parts.iter().map(|p| inner.decode(p)).collect::<Result<Vec<_>>>()?;
                Ok(Region::vietoris(parts))
            }
            SpaceKind::Product(fs) => {
                let rs = v
                    .get("box")
                    .and_then(Value::as_array)
                    .filter(|a| a.len() == fs.len())
                    .ok_or_else(|| bad("{\"box\": [...]} with one entry per factor"))?;
                Ok(Region::Box(
                    fs.iter().zip(rs).map(|(f, r)| f.decode(r)).collect::<Result<_>>()?,
                ))
            }
            SpaceKind::DisjointSum { inner, .. } => {
                let ps = v
                    .get("sum")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("{\"sum\": [[k, region], ...]}"))?;
                let mut parts = Vec::new();
                for p in ps {
                    let pair = p
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| bad("[k, region]"))?;
                    let k = pair[0].as_u64().ok_or_else(|| bad("summand index"))? as u32;
                    parts.push((k, inner.decode(&pair[1])?));
                }
                Ok(Region::sum(parts))
            }
        }
    }
}

fn collect_support(r: &Region, out: &mut BTreeSet<u32>) {
    match r {
        Region::Clopen(s) => out.extend(s.support_slice().iter().copied()),
        Region::Finite(_) => {}
        Region::Vietoris(v) => v.parts().iter().for_each(|p| collect_support(p, out)),
        Region::Box(rs) => rs.iter().for_each(|p| collect_support(p, out)),
        Region::Sum(ps) => ps.iter().for_each(|(_, p)| collect_support(p, out)),
    }
}

/// JSON encoding of a region; decoding needs the owning space.
pub fn region_to_json(r: &Region) -> Value {
    match r {
        Region::Clopen(s) => Value::Array(
            s.cylinders()
                .iter()
                .map(|c| {
                    Value::Array(
                        c.assignments()
                            .iter()
                            .map(|&(coord, bit)| json!([coord, bit as u8]))
                            .collect(),
                    )
                })
                .collect(),
        ),
        Region::Finite(o) => json!(o.points()),
        Region::Vietoris(v) => json!({ "parts": v.parts().iter().map(region_to_json).collect::<Vec<_>>() }),
        Region::Box(rs) => json!({ "box": rs.iter().map(region_to_json).collect::<Vec<_>>() }),
        Region::Sum(ps) => json!({
            "sum": ps.iter().map(|(k, r)| json!([k, region_to_json(r)])).collect::<Vec<_>>()
        }),
    }
}

impl VietorisBasic {
    /// `∪ parts` for a Cantor or finite inner space.
    pub fn union_of_parts(&self, inner: &Space) -> Result<Region> {
        let mut acc = inner.empty();
        for p in self.parts() {
            acc = inner.union(&acc, p)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for d in [
            "cantor",
            "cantor:8",
            "exp(cantor)",
            "product(cantor,cantor)",
            "sum(3,cantor)",
            "product(cantor,exp(cantor))",
        ] {
            assert_eq!(Space::parse(d).unwrap().to_string(), d);
        }
        assert!(Space::parse("torus").is_err());
        assert!(Space::parse("exp(exp(cantor))").is_err());
        assert!(Space::parse("exp(cantor").is_err());
    }

    #[test]
    fn cross_space_rejected() {
        let c = Space::cantor();
        let e = Space::parse("exp(cantor)").unwrap();
        assert!(matches!(c.subset(&e.whole(), &c.whole()), Err(Error::CrossSpace(_))));
        let bounded = Space::parse("cantor:2").unwrap();
        assert!(bounded.check_region(&Region::cyl(&[(2, 1)])).is_err());
    }

    #[test]
    fn json_round_trip_per_space() {
        let e = Space::parse("product(cantor,exp(cantor))").unwrap();
        let r = Region::Box(vec![
            Region::cyl(&[(0, 1), (3, 0)]),
            Region::vietoris([Region::cyl(&[(1, 1)]), Region::cyl(&[])]),
        ]);
        let v = e.region_to_json(&r);
        assert_eq!(e.region_from_json(&v).unwrap(), r);
        assert_eq!(
            serde_json::to_string(&Space::cantor().region_to_json(&Region::cyl(&[(0, 1), (2, 0)]))).unwrap(),
            "[[[0,1],[2,0]]]"
        );
        assert!(Space::cantor().region_from_json(&json!([[[0, 1], [0, 0]]])).is_err());
        assert!(Space::cantor().region_from_json(&json!([[[0, 2]]])).is_err());
    }

    #[test]
    fn sum_and_box_semantics() {
        let s = Space::parse("sum(3,cantor)").unwrap();
        let a = Region::sum([(1, Region::cyl(&[(0, 1)]))]);
        assert!(s.subset(&a, &s.whole()).unwrap());
        assert!(!s.subset(&s.whole(), &a).unwrap());
        let b = Region::sum([(2, Region::cyl(&[]))]);
        assert!(!s.meets(&a, &b).unwrap());
        assert_eq!(
            s.canonical_refinement(&s.whole()).unwrap(),
            Region::sum([(0, Region::cyl(&[]))])
        );

        let p = Space::parse("product(cantor,cantor)").unwrap();
        let x = Region::Box(vec![Region::cyl(&[(0, 1)]), Region::cyl(&[])]);
        let y = Region::Box(vec![Region::cyl(&[(0, 0)]), Region::cyl(&[])]);
        assert!(!p.meets(&x, &y).unwrap());
        assert!(p.subset(&x, &p.whole()).unwrap());
        let empty_box = Region::Box(vec![Region::Clopen(ClopenSet::empty()), Region::cyl(&[])]);
        assert!(!p.is_nonempty(&empty_box).unwrap());
    }
}
