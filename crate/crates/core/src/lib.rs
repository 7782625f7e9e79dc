//! Verification engine for the independent-set bound
//! `ind(G) <= 2^iso(G) * prod_{uv in E} (2^d(u) + 2^d(v) - 1)^(1/(d(u) d(v)))`
//! on graphs of maximum degree at most 5.
//!
//! The crate provides exact independent-set counting, the formal algebra of
//! the bound with certified comparisons, good-vertex checks, the exhaustive
//! local-configuration searches and the regular-case verifier, plus the
//! certificate documents that tie a full run together.

pub mod algebra;
pub mod certificate;
pub mod corpus;
pub mod count;
pub mod good;
pub mod graph;
pub mod regular;
pub mod search;
pub mod selftest;

pub use algebra::{
    certify_sum_inequality, compare_pure_products, pi_product, Factor, FactorProduct, Outcome, Precision, Verdict,
};
pub use certificate::{run_verification, CertificateDocument, Overall, RunConfig, Statement};
pub use count::{count_bruteforce, count_independent_sets};
pub use good::{check_kahn_bound, find_good_vertex, is_good, is_good_fullgraph};
pub use graph::{Graph, GraphError};
pub use regular::{verify_regular, RegularProfile};
pub use search::{
    canonical_form, verify_statement1_stage1, verify_statement1_stage2, verify_statement2, CanonicalForm, LocalConfig,
    SearchOptions, SearchReport,
};
