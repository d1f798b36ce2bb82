use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::spaces::{ClopenSet, Cylinder, Region, Space, SpaceKind};

/// A dense open `E ⊆ X × Y` given by the refinement fact the construction
/// uses plus a box-containment test. `X` is a Cantor cube; `Y` is passed in.
pub trait DenseOpenOracle: Send + Sync {
    fn name(&self) -> String;

    /// Nonempty `U* ⊆ U` and `V_i* ⊆ V_i` with `U* × V_i* ⊆ E` for every `i`.
    fn refine(&self, y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)>;

    /// `U × V ⊆ E`.
    fn contains_box(&self, y: &Space, u: &Region, v: &Region) -> Result<bool>;
}

/// Checks a refinement against the oracle contract.
pub fn check_refinement(
    oracle: &dyn DenseOpenOracle,
    y: &Space,
    u: &Region,
    vs: &[Region],
    out: &(Region, Vec<Region>),
) -> Result<()> {
    let x = Space::cantor();
    let fail = |d: String| Error::oracle(oracle.name(), d);
    let (us, vss) = out;
    if !x.is_nonempty(us)? || !x.subset(us, u)? {
        return Err(fail(format!("refined {us} is not a nonempty subset of {u}")));
    }
    if vss.len() != vs.len() {
        return Err(fail(format!("{} targets refined into {}", vs.len(), vss.len())));
    }
    for (v, vstar) in vs.iter().zip(vss) {
        if !y.is_nonempty(vstar)? || !y.subset(vstar, v)? {
            return Err(fail(format!("refined {vstar} is not a nonempty subset of {v}")));
        }
        if !oracle.contains_box(y, us, vstar)? {
            return Err(fail(format!("box {us} × {vstar} is not inside E")));
        }
    }
    Ok(())
}

pub(crate) fn clopen<'a>(name: &str, r: &'a Region) -> Result<&'a ClopenSet> {
    r.as_clopen()
        .ok_or_else(|| Error::oracle(name, format!("{r} is not a Cantor region")))
}

fn bit_cylinder(coord: u32, bit: bool) -> ClopenSet {
    ClopenSet::cylinder(Cylinder::from_pairs([(coord, bit)]).expect("single assignment"))
}

/// Coordinates `c` with `U ⊆ W_{c↦b}`, with that bit.
fn fixed_coordinates(u: &ClopenSet) -> Vec<(u32, bool)> {
    let Some(first) = u.first_cylinder() else {
        return Vec::new();
    };
    first
        .assignments()
        .iter()
        .copied()
        .filter(|&(c, b)| u.cylinders().iter().all(|cyl| cyl.get(c) == Some(b)))
        .collect()
}

/// Finite coordinate permutation `π`, identity outside `images`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u32>,
    inverse: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation {
            images: Vec::new(),
            inverse: Vec::new(),
        }
    }

    /// `images[i] = π(i)`; must be a bijection of `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let set: BTreeSet<u32> = images.iter().copied().collect();
        if set.len() != images.len() || set.iter().any(|&i| i >= n) {
            return Err(Error::config(format!("{images:?} is not a permutation of 0..{n}")));
        }
        let mut inverse = vec![0; images.len()];
        for (i, &p) in images.iter().enumerate() {
            inverse[p as usize] = i as u32;
        }
        Ok(Permutation { images, inverse })
    }

    pub fn apply(&self, c: u32) -> u32 {
        self.images.get(c as usize).copied().unwrap_or(c)
    }

    pub fn apply_inverse(&self, c: u32) -> u32 {
        self.inverse.get(c as usize).copied().unwrap_or(c)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }
}

/// The clopen set of `Y`-side points a box must avoid: for a Cantor `Y`, `V`
/// itself; for `exp(cantor)`, `V_1 ∩ … ∩ V_n` (the points `y` with `{y} ∈ V`).
fn singleton_trace(name: &str, y: &Space, v: &Region) -> Result<ClopenSet> {
    match (y.kind(), v) {
        (SpaceKind::Cantor { .. }, Region::Clopen(s)) => Ok(s.clone()),
        (SpaceKind::Hyperspace(inner), Region::Vietoris(b)) if inner.is_cantor() => {
            let mut acc = ClopenSet::whole();
            for p in b.parts() {
                acc = acc.intersect(clopen(name, p)?);
            }
            Ok(acc)
        }
        _ => Err(Error::oracle(name, format!("unsupported Y-side region {v} in {y}"))),
    }
}

/// The part of a `Y`-region that receives the separating coordinate: the
/// region itself, or the canonically first part of a Vietoris basic.
fn target_part<'a>(name: &str, v: &'a Region) -> Result<&'a ClopenSet> {
    match v {
        Region::Clopen(s) => Ok(s),
        Region::Vietoris(b) => clopen(name, &b.parts()[0]),
        other => Err(Error::oracle(name, format!("unsupported Y-side region {other}"))),
    }
}

fn replace_target(v: &Region, new_part: ClopenSet) -> Region {
    match v {
        Region::Vietoris(b) => {
            let mut parts = b.parts().to_vec();
            parts[0] = Region::Clopen(new_part);
            Region::vietoris(parts)
        }
        _ => Region::Clopen(new_part),
    }
}

/// Separates `U` from the graph of `π` on every target at once. If `U`
/// already fixes a coordinate `c` whose image is free in every target, `U`
/// is kept and the targets get the opposite bit at `π(c)`; otherwise the
/// least coordinate `α` with `α` free in `U` and `π(α)` free in the targets
/// gets `x(α)=0`, `y(π(α))=1`.
pub(crate) fn separate(name: &str, pi: &Permutation, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)> {
    let us = clopen(name, u)?;
    if !us.is_nonempty() {
        return Err(Error::oracle(name, "empty X-side region"));
    }
    let mut target_support = BTreeSet::new();
    for v in vs {
        target_support.extend(target_part(name, v)?.support_slice().iter().copied());
    }
    let kept = fixed_coordinates(us)
        .into_iter()
        .find(|&(c, _)| !target_support.contains(&pi.apply(c)));
    let (u_star, y_coord, y_bit) = match kept {
        Some((c, b)) => (us.clone(), pi.apply(c), !b),
        None => {
            let alpha = (0u32..)
                .find(|&a| !us.support_slice().contains(&a) && !target_support.contains(&pi.apply(a)))
                .expect("finite supports");
            (us.intersect(&bit_cylinder(alpha, false)), pi.apply(alpha), true)
        }
    };
    let force = bit_cylinder(y_coord, y_bit);
    let v_star = vs
        .iter()
        .map(|v| Ok(replace_target(v, target_part(name, v)?.intersect(&force))))
        .collect::<Result<Vec<_>>>()?;
    Ok((Region::Clopen(u_star), v_star))
}

/// `U × V` avoids the graph of `π` (over `exp(cantor)`: avoids
/// `{(x, {π(x)})}`).
pub(crate) fn avoids_graph(name: &str, pi: &Permutation, y: &Space, u: &Region, v: &Region) -> Result<bool> {
    let us = clopen(name, u)?;
    let image = ClopenSet::normalize(us.cylinders().iter().map(|c| c.rename(|i| pi.apply(i))));
    Ok(!image.meets(&singleton_trace(name, y, v)?))
}

/// `E = {(x, y) : y ≠ π(x)}`; the identity permutation gives the complement
/// of the diagonal.
#[derive(Clone, Debug)]
pub struct GraphComplement {
    pi: Permutation,
}

impl GraphComplement {
    pub fn off_diagonal() -> Self {
        GraphComplement {
            pi: Permutation::identity(),
        }
    }

    pub fn new(pi: Permutation) -> Self {
        GraphComplement { pi }
    }
}

impl DenseOpenOracle for GraphComplement {
    fn name(&self) -> String {
        if self.pi.images().is_empty() {
            "diag".into()
        } else {
            let im: Vec<String> = self.pi.images().iter().map(u32::to_string).collect();
            format!("graph:{}", im.join(","))
        }
    }

    fn refine(&self, _y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)> {
        separate(&self.name(), &self.pi, u, vs)
    }

    fn contains_box(&self, y: &Space, u: &Region, v: &Region) -> Result<bool> {
        avoids_graph(&self.name(), &self.pi, y, u, v)
    }
}

/// `X × Y` minus the box `W_{0↦0} × W_{0↦0}`: open but not dense. Refinement
/// fails exactly when the query box lies inside the hole.
#[derive(Clone, Debug, Default)]
pub struct HoleOracle;

impl DenseOpenOracle for HoleOracle {
    fn name(&self) -> String {
        "hole".into()
    }

    fn refine(&self, y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)> {
        if !y.is_cantor() {
            return Err(Error::oracle("hole", format!("Y must be a Cantor cube, got {y}")));
        }
        let us = clopen("hole", u)?;
        let one = bit_cylinder(0, true);
        let u_out = us.intersect(&one);
        if u_out.is_nonempty() {
            return Ok((Region::Clopen(u_out), vs.to_vec()));
        }
        let mut out = Vec::with_capacity(vs.len());
        for v in vs {
            let m = clopen("hole", v)?.intersect(&one);
            if !m.is_nonempty() {
                return Err(Error::oracle("hole", format!("no box of E inside {u} × {v}")));
            }
            out.push(Region::Clopen(m));
        }
        Ok((u.clone(), out))
    }

    fn contains_box(&self, _y: &Space, u: &Region, v: &Region) -> Result<bool> {
        let zero = bit_cylinder(0, false);
        Ok(!(clopen("hole", u)?.meets(&zero) && clopen("hole", v)?.meets(&zero)))
    }
}
