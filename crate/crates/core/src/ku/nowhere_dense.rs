//! Dense open sets given as complements of closed nowhere dense sets.

use crate::error::{Error, Result};
use crate::spaces::{Region, Space};

use super::oracle::{avoids_graph, check_refinement, separate, DenseOpenOracle, Permutation};

/// A closed nowhere dense `D ⊆ X × Y` described by two callbacks.
pub trait ClosedNowhereDense: Send + Sync {
    fn name(&self) -> String;

    /// Nonempty `U' ⊆ U` and `V_i' ⊆ V_i` with every `U' × V_i'` disjoint
    /// from `D`.
    fn avoid(&self, y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)>;

    /// Whether the box `U × V` meets `D`.
    fn box_meets(&self, y: &Space, u: &Region, v: &Region) -> Result<bool>;
}

/// `E = (X × Y) \ D`. Every `avoid` answer is checked before it is used; a
/// bad answer becomes an oracle error naming the handle.
pub struct NowhereDenseAdapter<D> {
    d: D,
}

impl<D: ClosedNowhereDense> NowhereDenseAdapter<D> {
    pub fn new(d: D) -> Self {
        NowhereDenseAdapter { d }
    }
}

impl<D: ClosedNowhereDense> DenseOpenOracle for NowhereDenseAdapter<D> {
    fn name(&self) -> String {
        format!("nd:{}", self.d.name())
    }

    fn refine(&self, y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)> {
        let out = self.d.avoid(y, u, vs)?;
        check_refinement(self, y, u, vs, &out)?;
        Ok(out)
    }

    fn contains_box(&self, y: &Space, u: &Region, v: &Region) -> Result<bool> {
        Ok(!self.d.box_meets(y, u, v)?)
    }
}

/// `D = ∅`.
#[derive(Clone, Debug, Default)]
pub struct EmptySet;

impl ClosedNowhereDense for EmptySet {
    fn name(&self) -> String {
        "empty".into()
    }

    fn avoid(&self, _y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)> {
        Ok((u.clone(), vs.to_vec()))
    }

    fn box_meets(&self, _y: &Space, _u: &Region, _v: &Region) -> Result<bool> {
        Ok(false)
    }
}

/// Graph of a coordinate permutation; the identity gives the diagonal.
#[derive(Clone, Debug)]
pub struct GraphSet {
    pi: Permutation,
}

impl GraphSet {
    pub fn diagonal() -> Self {
        GraphSet {
            pi: Permutation::identity(),
        }
    }

    pub fn new(pi: Permutation) -> Self {
        GraphSet { pi }
    }
}

impl ClosedNowhereDense for GraphSet {
    fn name(&self) -> String {
        if self.pi.images().is_empty() {
            "diag".into()
        } else {
            let im: Vec<String> = self.pi.images().iter().map(u32::to_string).collect();
            format!("graph:{}", im.join(","))
        }
    }

    fn avoid(&self, _y: &Space, u: &Region, vs: &[Region]) -> Result<(Region, Vec<Region>)> {
        separate(&self.name(), &self.pi, u, vs)
    }

    fn box_meets(&self, y: &Space, u: &Region, v: &Region) -> Result<bool> {
        Ok(!avoids_graph(&self.name(), &self.pi, y, u, v)?)
    }
}

/// Parses the handle part of `nd:<handle>`: `diag`, `empty`, `graph:<images>`.
pub fn parse_handle(desc: &str) -> Result<Box<dyn DenseOpenOracle>> {
    match desc {
        "diag" => Ok(Box::new(NowhereDenseAdapter::new(GraphSet::diagonal()))),
        "empty" => Ok(Box::new(NowhereDenseAdapter::new(EmptySet))),
        _ => match desc.strip_prefix("graph:") {
            Some(images) => Ok(Box::new(NowhereDenseAdapter::new(GraphSet::new(parse_permutation(
                images,
            )?)))),
            None => Err(Error::config(format!("unknown nowhere dense handle `{desc}`"))),
        },
    }
}

pub fn parse_permutation(images: &str) -> Result<Permutation> {
    let v = images
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::config(format!("bad permutation entry `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(v)
}
