//! Algebra of the bound: edge factors, formal products, certified
//! comparisons and the monotonicity fact used by level-3 padding.

pub mod certify;
pub mod fact;
pub mod interval;
pub mod pi;
pub mod product;

pub use certify::{
    certify_against_sum, certify_sum_inequality, compare_pure_products, compare_with_integer, Certificate, Method,
    Outcome, Precision, Verdict, VerdictRecord,
};
pub use fact::{check_f_fact, FactCheckReport, FactTuple};
pub use interval::Interval;
pub use pi::{pi_product, pi_product_bounded, DegreeBoundError, DEFAULT_MAX_DEGREE};
pub use product::{Exponent, Factor, FactorProduct};
