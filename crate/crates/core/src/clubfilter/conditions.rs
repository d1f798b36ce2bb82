use std::collections::BTreeSet;

use super::element::{intersection_closure, FilterElement};
use crate::error::{Error, Result};
use crate::game::{cylinders_upto, subsets_of_size};
use crate::spaces::{vietoris, Point, Region, Space, SpaceKind};

/// Number of cylinders with domain in a `j`-set and at most `max_dom`
/// assignments.
fn cj_size(j: usize, max_dom: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for d in 0..=max_dom.min(j) {
        total += binom << d;
        binom = binom * (j - d) as u128 / (d as u128 + 1);
    }
    total
}

/// `C_J`: every cylinder with domain inside `J` and at most `max_dom`
/// assignments, including the whole cube.
pub fn canonical_cj(space: &Space, j: &BTreeSet<u32>, max_dom: usize) -> Result<FilterElement> {
    if !space.is_cantor() {
        return Err(Error::Unsupported(format!("C_J on {space}")));
    }
    let cap = space.caps().closure;
    let size = cj_size(j.len(), max_dom);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: "C_J size",
            limit: cap,
            actual: size.min(usize::MAX as u128) as usize,
        });
    }
    let coords: Vec<u32> = j.iter().copied().collect();
    FilterElement::new(
        space,
        cylinders_upto(&coords, max_dom).into_iter().map(Region::cylinder),
        vec![format!("canonical C_J J={coords:?} maxDom={max_dom}")],
    )
}

/// Outcome of checking condition (3) of a club filter against one `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition3 {
    /// `w` (at `index` in the element) has every member below it meeting
    /// `V`. For hyperspaces `points` is a finite set lying in both `w` and
    /// `V`.
    Witness {
        index: usize,
        w: Region,
        points: Option<Vec<Point>>,
    },
    /// For every member `W`, a member `U ⊆ W` disjoint from `V`.
    Counterexample(Vec<(Region, Region)>),
}

impl Condition3 {
    pub fn witness(&self) -> Option<&Region> {
        match self {
            Condition3::Witness { w, .. } => Some(w),
            Condition3::Counterexample(_) => None,
        }
    }
}

/// The canonically first `W ∈ P` such that every `U ∈ P` with `U ⊆ W` meets
/// `V`; otherwise, per `W`, a disjoint `U ⊆ W`.
pub fn check_condition3(p: &FilterElement, v: &Region) -> Result<Condition3> {
    let space = p.space();
    if !space.is_nonempty(v)? {
        return Err(Error::config(format!("condition (3) needs a nonempty V, got {v}")));
    }
    let meets: Vec<bool> = p.sets().iter().map(|u| space.meets(u, v)).collect::<Result<_>>()?;
    let mut report = Vec::new();
    for (i, w) in p.sets().iter().enumerate() {
        let mut bad = None;
        for (u, &m) in p.sets().iter().zip(&meets) {
            if !m && space.subset(u, w)? {
                bad = Some(u);
                break;
            }
        }
        match bad {
            None => {
                let points = witness_points(space, w, v)?;
                return Ok(Condition3::Witness {
                    index: i,
                    w: w.clone(),
                    points,
                });
            }
            Some(u) => report.push((w.clone(), u.clone())),
        }
    }
    Ok(Condition3::Counterexample(report))
}

fn witness_points(space: &Space, w: &Region, v: &Region) -> Result<Option<Vec<Point>>> {
    let (SpaceKind::Hyperspace(inner), Region::Vietoris(wb), Region::Vietoris(vb)) = (space.kind(), w, v) else {
        return Ok(None);
    };
    let pts = vietoris::meets(inner, wb, vb)?.ok_or_else(|| Error::config(format!("witness {w} does not meet {v}")))?;
    if !vietoris::contains_finite_set(inner, wb, &pts)? || !vietoris::contains_finite_set(inner, vb, &pts)? {
        return Err(Error::config("constructed witness set is not in both basics"));
    }
    Ok(Some(pts))
}

/// Independent re-check of a condition (3) witness.
pub fn verify_condition3(p: &FilterElement, v: &Region, result: &Condition3) -> Result<bool> {
    let space = p.space();
    match result {
        Condition3::Witness { index, w, points } => {
            if p.sets().get(*index) != Some(w) {
                return Ok(false);
            }
            for u in p.sets() {
                if space.subset(u, w)? && !space.meets(u, v)? {
                    return Ok(false);
                }
            }
            if let (SpaceKind::Hyperspace(inner), Region::Vietoris(wb), Region::Vietoris(vb)) = (space.kind(), w, v) {
                let Some(pts) = points else { return Ok(false) };
                return Ok(
                    vietoris::contains_finite_set(inner, wb, pts)? && vietoris::contains_finite_set(inner, vb, pts)?
                );
            }
            Ok(true)
        }
        Condition3::Counterexample(pairs) => {
            if pairs.len() != p.len() {
                return Ok(false);
            }
            for (w, u) in pairs {
                if !p.contains(u)? || !space.subset(u, w)? || space.meets(u, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The list increases under semantic inclusion of families.
pub fn check_omega_chain(chain: &[FilterElement]) -> Result<bool> {
    for w in chain.windows(2) {
        if !w[0].is_subfamily_of(&w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Boxes `∏ W_i` with `W_i` from factor `i`'s element for `i ∈ s` and the
/// whole factor elsewhere, plus the whole product.
pub fn product_filter_element(
    product: &Space,
    factors: &[FilterElement],
    s: &BTreeSet<usize>,
) -> Result<FilterElement> {
    let SpaceKind::Product(spaces) = product.kind() else {
        return Err(Error::Unsupported(format!("product element on {product}")));
    };
    if spaces.len() != factors.len() {
        return Err(Error::config(format!(
            "{} factor elements for a {}-fold product",
            factors.len(),
            spaces.len()
        )));
    }
    if let Some(bad) = s.iter().find(|&&i| i >= factors.len()) {
        return Err(Error::config(format!("index {bad} outside the product")));
    }
    for (f, sp) in factors.iter().zip(spaces) {
        if f.space() != sp {
            return Err(Error::CrossSpace(format!(
                "factor element over {} for factor {sp}",
                f.space()
            )));
        }
    }
    let cap = product.caps().closure;
    let mut acc: Vec<Vec<Region>> = vec![Vec::new()];
    for (i, (f, sp)) in factors.iter().zip(spaces).enumerate() {
        let choices: Vec<Region> = if s.contains(&i) {
            f.sets().to_vec()
        } else {
            vec![sp.whole()]
        };
        let size = acc.len().saturating_mul(choices.len());
        if size > cap {
            return Err(Error::CapExceeded {
                what: "product element",
                limit: cap,
                actual: size,
            });
        }
        acc = acc
            .iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut b = prefix.clone();
                    b.push(c.clone());
                    b
                })
            })
            .collect();
    }
    let mut sets: Vec<Region> = acc.into_iter().map(Region::Box).collect();
    sets.push(product.whole());
    FilterElement::new(product, sets, vec![format!("product over S={s:?}")])
}

/// `P*`: Vietoris basics with parts from an intersection-closed `P`, arity at
/// most `max_arity`, nonempty, deduplicated by part set.
pub fn hyperspace_filter_element(hyper: &Space, p: &FilterElement, max_arity: usize) -> Result<FilterElement> {
    let inner = hyper
        .hyperspace_inner()
        .ok_or_else(|| Error::Unsupported(format!("hyperspace element on {hyper}")))?;
    if inner != p.space() {
        return Err(Error::CrossSpace(format!("element over {} for {hyper}", p.space())));
    }
    if let Some((a, b)) = p.intersection_gap()? {
        return Err(Error::config(format!(
            "P is not intersection-closed: {a} ∩ {b} is missing"
        )));
    }
    let n = p.len();
    let mut count = 0u128;
    let mut binom = 1u128;
    for k in 1..=max_arity.min(n) {
        binom = binom * (n - k + 1) as u128 / k as u128;
        count += binom;
    }
    let cap = hyper.caps().closure;
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            what: "hyperspace element",
            limit: cap,
            actual: count.min(usize::MAX as u128) as usize,
        });
    }
    let idx: Vec<u32> = (0..n as u32).collect();
    let mut sets = Vec::with_capacity(count as usize);
    for k in 1..=max_arity.min(n) {
        for choice in subsets_of_size(&idx, k) {
            let r = Region::vietoris(choice.iter().map(|&i| p.sets()[i as usize].clone()));
            if hyper.is_nonempty(&r)? {
                sets.push(r);
            }
        }
    }
    let mut prov = p.provenance().to_vec();
    prov.push(format!("hyperspace lift maxArity={max_arity}"));
    FilterElement::new(hyper, sets, prov)
}

/// Condition (3) in a hyperspace: as [`check_condition3`], with meets decided
/// on Vietoris basics and the witness carrying a finite point set in both.
pub fn check_condition3_hyperspace(pstar: &FilterElement, v: &Region) -> Result<Condition3> {
    if pstar.space().hyperspace_inner().is_none() || !matches!(v, Region::Vietoris(_)) {
        return Err(Error::config(
            "condition (3) in a hyperspace needs a hyperspace element and a Vietoris basic",
        ));
    }
    check_condition3(pstar, v)
}

/// Closes `p` under intersections within the space's closure cap.
pub fn close_under_intersections(p: FilterElement) -> Result<FilterElement> {
    let cap = p.space().caps().closure;
    let mut out = intersection_closure(p, cap)?;
    out.push_provenance("intersection closure");
    Ok(out)
}
