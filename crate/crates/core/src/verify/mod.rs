//! Verifiers for the size bound, the transversal lemma and block structure.

pub mod bound;
pub mod structure;
pub mod transversal;

pub use bound::{bound_region, inequality_rhs, lower_bound, verify_bound, BoundRegion, BoundReport};
pub use structure::{verify_hr_structure, verify_min_structure, StructureReport, THREE_BLOCK_MIN_ORDER};
pub use transversal::{
    check_lemma2, max_empty_transversal, FrequencyShortfall, Lemma2Report, Region, TransversalReport,
};
