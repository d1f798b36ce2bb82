//! Exact representations of Cantor cubes, finite spaces, Vietoris
//! hyperspaces, products and disjoint sums.

pub mod clopen;
pub mod cylinder;
pub mod finite;
pub mod region;
pub mod space;
pub mod vietoris;

pub use clopen::ClopenSet;
pub use cylinder::{fresh_coordinate, fresh_coordinates, CantorPoint, Cylinder};
pub use finite::{FiniteOpen, FiniteSpace, LatticeFile};
pub use region::{Point, Region, VietorisBasic};
pub use space::{region_to_json, Caps, Space, SpaceKind};

/// Exact measure values.
pub type Rational = num_rational::BigRational;
