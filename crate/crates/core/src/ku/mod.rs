//! Finite-depth Kuratowski–Ulam construction: partitions of a Cantor cube
//! driven by a dense open oracle and a Player I strategy on `Y`, with
//! independent audits and sampled section checks.

mod construction;
mod nowhere_dense;
mod oracle;
mod sections;

pub use construction::{
    audit, run_ku_construction, AuditFailure, KuAudit, KuBranch, KuCell, KuConfig, KuNode, KuResult,
};
pub use nowhere_dense::{parse_handle, parse_permutation, ClosedNowhereDense, EmptySet, GraphSet, NowhereDenseAdapter};
pub use oracle::{check_refinement, DenseOpenOracle, GraphComplement, HoleOracle, Permutation};
pub use sections::{verify_sections, SectionCheck, SectionReport, SectionSample, SAMPLE_EXTRA_BITS};
