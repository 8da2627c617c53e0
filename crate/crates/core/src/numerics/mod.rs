//! Threshold functions, predicted-width formulas, binomial tail bounds with
//! an exact CDF oracle, elementary pq inequalities as checkable predicates,
//! and the pair-counting lower-bound certificate.

mod alpha_beta;
mod certificate;
mod lemmas;
mod predict;
mod tail;

use thiserror::Error;

pub use alpha_beta::{alpha, alpha2, beta, beta2, p_star, P_STAR_BRACKET};
pub use certificate::{
    certified_lower_bound, count_k2m, count_low_pairs, has_k2m, min_degree_subgraph, strongest_certificate,
    LowerBoundCertificate,
};
pub use lemmas::{check_pq_lemmas, one_minus_powers, LemmaCheck, PqLemmaReport};
pub use predict::{
    default_slack, predicted_dense_width, predicted_lower_dense, predicted_sparse_lower,
    predicted_sparse_upper, Prediction,
};
pub use tail::{
    binom_lower_bound, binom_upper_bound, exact_binom_cdf, kl_div, TailBoundQuery,
};

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("graph must be plain (no red edges)")]
    NotPlain,
    #[error("graph has no edges")]
    NoEdges,
}

pub(crate) fn domain(msg: impl Into<String>) -> NumericsError {
    NumericsError::Domain(msg.into())
}

/// Tolerance for floating-point identities: absolute near zero, relative
/// for larger magnitudes.
pub fn identity_tolerance(value: f64) -> f64 {
    1e-12 * value.abs().max(1.0)
}
