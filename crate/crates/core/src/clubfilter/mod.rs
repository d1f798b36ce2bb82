//! Club filters: canonical `C_J` elements, conditions (1)–(3) at finite
//! bounds, the filter-to-strategy compiler, the strategy-to-filter closure,
//! and product and hyperspace lifts.

mod aaa;
mod bbb;
mod conditions;
mod element;
mod source;

pub use aaa::aaa_closure;
pub use bbb::BbbStrategy;
pub use conditions::{
    canonical_cj, check_condition3, check_condition3_hyperspace, check_omega_chain, close_under_intersections,
    hyperspace_filter_element, product_filter_element, verify_condition3, Condition3,
};
pub use element::{canonical_order, intersection_closure, FilterElement};
pub use source::{parse_filter, AaaSource, CjSource, ClubSource, HyperspaceSource, ProductSource};
