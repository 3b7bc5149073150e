//! End-to-end certificate pipelines and exact bound calculators.
//!
//! Each pipeline rebuilds a nonexistence argument from first principles and
//! checks every intermediate number against frozen certificate data; a single
//! mismatch aborts with a machine-readable diff
//! ([`crate::Error::CertifyMismatch`]).

mod bounds;
mod h54;
mod q9;

pub use bounds::{
    binomial, bounds, combinatorial_first_rank, combinatorial_threshold, klein_threshold,
    moorhouse_criterion, moorhouse_first_rank, ovoid_section_bound, split_prime_power,
    BoundFamily, BoundReport, FieldBoundRow, MoorhouseCriterion, RankVerdict, SectionBound,
};
pub use h54::{h54_certificate, H54Config, H54Report, PlaneSubgeometry};
pub use q9::{
    q9_certificate, remark_tight_set, transversal_lines, verify_threelines,
    verify_two_line_property, LineOfFamily, Q9BuildReport, Q9Certificate, Q9Config,
    RemarkReport, ThreeLinesReport, TwoLineReport,
};
