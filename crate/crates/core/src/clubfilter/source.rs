use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use super::aaa::aaa_closure;
use super::conditions::{canonical_cj, close_under_intersections, hyperspace_filter_element, product_filter_element};
use super::element::FilterElement;
use crate::descriptor::{call, parse_coords, parse_num, split_top_level};
use crate::error::{Error, Result};
use crate::game::Strategy;
use crate::registry::StrategyRegistry;
use crate::spaces::{Region, Space, SpaceKind};

/// Constructive form of condition (2): every finite family extends to a
/// filter element containing it.
pub trait ClubSource: Send + Sync {
    fn describe(&self) -> String;

    fn space(&self) -> &Space;

    fn extend(&self, seed: &[Region]) -> Result<FilterElement>;
}

fn add_seed(mut el: FilterElement, seed: &[Region]) -> Result<FilterElement> {
    for r in seed {
        el.insert(r.clone())?;
    }
    Ok(el)
}

/// `C_J` extender on a Cantor cube: `J` is the base set plus every
/// coordinate the seed mentions; the seed itself is always included.
pub struct CjSource {
    space: Space,
    base: BTreeSet<u32>,
    max_dom: usize,
}

impl CjSource {
    pub fn new(space: Space, base: BTreeSet<u32>, max_dom: usize) -> Result<Self> {
        if !space.is_cantor() {
            return Err(Error::Unsupported(format!("C_J source on {space}")));
        }
        Ok(CjSource { space, base, max_dom })
    }
}

impl ClubSource for CjSource {
    fn describe(&self) -> String {
        let j: Vec<String> = self.base.iter().map(u32::to_string).collect();
        format!("cj:{}:{}", j.join(","), self.max_dom)
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn extend(&self, seed: &[Region]) -> Result<FilterElement> {
        let mut j = self.base.clone();
        for r in seed {
            j.extend(self.space.support(r));
        }
        add_seed(canonical_cj(&self.space, &j, self.max_dom)?, seed)
    }
}

/// Extender given by the bounded closure of the seed under a Player I
/// strategy.
pub struct AaaSource {
    space: Space,
    sigma: Mutex<Box<dyn Strategy>>,
    sigma_desc: String,
    depth: usize,
    arity: usize,
    seqlen: usize,
}

impl AaaSource {
    pub fn new(
        space: Space,
        sigma: Box<dyn Strategy>,
        sigma_desc: String,
        depth: usize,
        arity: usize,
        seqlen: usize,
    ) -> Self {
        AaaSource {
            space,
            sigma: Mutex::new(sigma),
            sigma_desc,
            depth,
            arity,
            seqlen,
        }
    }
}

impl ClubSource for AaaSource {
    fn describe(&self) -> String {
        format!("aaa:{}:{}:{}:{}", self.sigma_desc, self.depth, self.arity, self.seqlen)
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn extend(&self, seed: &[Region]) -> Result<FilterElement> {
        let sigma = self.sigma.lock().expect("sigma lock").clone_box();
        aaa_closure(&self.space, seed, sigma.as_ref(), self.depth, self.arity, self.seqlen)
    }
}

/// Boxes over the factor extenders' elements.
pub struct ProductSource {
    space: Space,
    factors: Vec<Arc<dyn ClubSource>>,
}

impl ProductSource {
    pub fn new(space: Space, factors: Vec<Arc<dyn ClubSource>>) -> Result<Self> {
        let SpaceKind::Product(fs) = space.kind() else {
            return Err(Error::Unsupported(format!("product source on {space}")));
        };
        if fs.len() != factors.len() {
            return Err(Error::config(format!("{} factor filters for {space}", factors.len())));
        }
        Ok(ProductSource { space, factors })
    }
}

impl ClubSource for ProductSource {
    fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.describe()).collect();
        format!("prod({})", parts.join(","))
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn extend(&self, seed: &[Region]) -> Result<FilterElement> {
        let mut elements = Vec::with_capacity(self.factors.len());
        for (i, f) in self.factors.iter().enumerate() {
            let mut proj = Vec::new();
            for r in seed {
                match r {
                    Region::Box(rs) if rs.len() == self.factors.len() => proj.push(rs[i].clone()),
                    other => return Err(Error::CrossSpace(format!("{other} is not a box of {}", self.space))),
                }
            }
            elements.push(f.extend(&proj)?);
        }
        let all: BTreeSet<usize> = (0..self.factors.len()).collect();
        add_seed(product_filter_element(&self.space, &elements, &all)?, seed)
    }
}

/// `P*` over the intersection closure of the inner extender's element for
/// the parts of the seed basics.
pub struct HyperspaceSource {
    space: Space,
    inner: Arc<dyn ClubSource>,
    max_arity: usize,
}

impl HyperspaceSource {
    pub fn new(space: Space, inner: Arc<dyn ClubSource>, max_arity: usize) -> Result<Self> {
        if space.hyperspace_inner() != Some(inner.space()) {
            return Err(Error::config(format!(
                "inner filter over {} for {space}",
                inner.space()
            )));
        }
        Ok(HyperspaceSource {
            space,
            inner,
            max_arity,
        })
    }
}

impl ClubSource for HyperspaceSource {
    fn describe(&self) -> String {
        format!("exp({}):{}", self.inner.describe(), self.max_arity)
    }

    fn space(&self) -> &Space {
        &self.space
    }

    fn extend(&self, seed: &[Region]) -> Result<FilterElement> {
        let mut parts = Vec::new();
        for r in seed {
            match r {
                Region::Vietoris(v) => parts.extend(v.parts().iter().cloned()),
                other => return Err(Error::CrossSpace(format!("{other} is not a Vietoris basic"))),
            }
        }
        let p = close_under_intersections(self.inner.extend(&parts)?)?;
        add_seed(hyperspace_filter_element(&self.space, &p, self.max_arity)?, seed)
    }
}

/// Parses `cj:<J>:<maxDom>`, `aaa:<strategy>:<depth>:<arity>:<seqlen>`,
/// `prod(<f>,…)` or `exp(<inner>):<maxArity>` against `space`.
pub fn parse_filter(desc: &str, space: &Space, registry: &StrategyRegistry) -> Result<Arc<dyn ClubSource>> {
    let desc = desc.trim();
    if let Some(rest) = desc.strip_prefix("cj:") {
        let (j, m) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::config(format!("expected cj:<J>:<maxDom>, got `{desc}`")))?;
        let j: BTreeSet<u32> = parse_coords(j)?.into_iter().collect();
        return Ok(Arc::new(CjSource::new(space.clone(), j, parse_num(m, "maxDom")?)?));
    }
    if let Some(rest) = desc.strip_prefix("aaa:") {
        let fields: Vec<&str> = rest.rsplitn(4, ':').collect();
        if fields.len() != 4 {
            return Err(Error::config(format!(
                "expected aaa:<strategy>:<depth>:<arity>:<seqlen>, got `{desc}`"
            )));
        }
        let (seqlen, arity, depth, sigma_desc) = (fields[0], fields[1], fields[2], fields[3]);
        let sigma = registry.build(sigma_desc, crate::game::Player::One, space)?;
        return Ok(Arc::new(AaaSource::new(
            space.clone(),
            sigma,
            sigma_desc.to_string(),
            parse_num(depth, "depth")?,
            parse_num(arity, "arity")?,
            parse_num(seqlen, "seqlen")?,
        )));
    }
    if let Some((args, rest)) = call(desc, "prod")? {
        if !rest.is_empty() {
            return Err(Error::config(format!("trailing input in filter `{desc}`")));
        }
        let SpaceKind::Product(fs) = space.kind() else {
            return Err(Error::config(format!(
                "prod(...) filter needs a product space, got {space}"
            )));
        };
        let parts = split_top_level(args, ',');
        if parts.len() != fs.len() {
            return Err(Error::config(format!("{} factor filters for {space}", parts.len())));
        }
        let factors = parts
            .iter()
            .zip(fs)
            .map(|(p, f)| parse_filter(p, f, registry))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Arc::new(ProductSource::new(space.clone(), factors)?));
    }
    if let Some((inner_desc, rest)) = call(desc, "exp")? {
        let arity = rest
            .strip_prefix(':')
            .ok_or_else(|| Error::config(format!("expected exp(<inner>):<maxArity>, got `{desc}`")))?;
        let inner_space = space
            .hyperspace_inner()
            .ok_or_else(|| Error::config(format!("exp(...) filter needs a hyperspace, got {space}")))?;
        let inner = parse_filter(inner_desc, inner_space, registry)?;
        return Ok(Arc::new(HyperspaceSource::new(
            space.clone(),
            inner,
            parse_num(arity, "maxArity")?,
        )?));
    }
    Err(Error::config(format!("unknown filter descriptor `{desc}`")))
}
