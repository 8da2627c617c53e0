//! Predicted-width formulas. Each result carries its formula and the terms
//! it leaves out, since none of them is a finite-n statement.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{domain, NumericsError};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub formula: &'static str,
    pub inputs: BTreeMap<&'static str, f64>,
    pub value: f64,
    pub omitted_terms: &'static str,
    /// Set when a negative raw value was clamped to 0.
    pub clamped: bool,
}

fn check_p(p: f64) -> Result<(), NumericsError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("p = {p} must lie in (0, 1)")))
    }
}

/// `2pqn - sqrt(6pq(1-2pq) n ln n)`.
pub fn predicted_dense_width(n: f64, p: f64) -> Result<Prediction, NumericsError> {
    check_p(p)?;
    if !(n >= 2.0) {
        return Err(domain(format!("n = {n} must be at least 2")));
    }
    let pq = p * (1.0 - p);
    let value = 2.0 * pq * n - (6.0 * pq * (1.0 - 2.0 * pq) * n * n.ln()).sqrt();
    Ok(Prediction {
        formula: "2pqn - sqrt(6pq(1-2pq) n ln n)",
        inputs: BTreeMap::from([("n", n), ("p", p)]),
        value,
        omitted_terms: "o(sqrt(n ln n))",
        clamped: false,
    })
}

/// `f(n) = 2pq(n-2) - sqrt(6pq(1-2pq)(n-2) ln n) - g`.
pub fn predicted_lower_dense(n: f64, p: f64, g: f64) -> Result<Prediction, NumericsError> {
    check_p(p)?;
    if !(n > 2.0) {
        return Err(domain(format!("n = {n} must exceed 2")));
    }
    if !(g >= 0.0) {
        return Err(domain(format!("slack g = {g} must be non-negative")));
    }
    let pq = p * (1.0 - p);
    let value =
        2.0 * pq * (n - 2.0) - (6.0 * pq * (1.0 - 2.0 * pq) * (n - 2.0) * n.ln()).sqrt() - g;
    Ok(Prediction {
        formula: "2pq(n-2) - sqrt(6pq(1-2pq)(n-2) ln n) - g(n)",
        inputs: BTreeMap::from([("n", n), ("p", p), ("g", g)]),
        value,
        omitted_terms: "none; g(n) is the caller's slack",
        clamped: false,
    })
}

/// Default slack `g(n) = n^0.55`, between `sqrt(n)` and `sqrt(n ln n)` in
/// growth as the dense lower bound requires.
pub fn default_slack(n: f64) -> f64 {
    n.powf(0.55)
}

/// `sqrt(3m) + m^{1/4} sqrt(ln m) / (4 * 3^{1/4}) + 3 m^{1/4} / 2` for a graph
/// with `m` edges.
pub fn predicted_sparse_upper(m: f64) -> Result<Prediction, NumericsError> {
    if !(m >= 2.0) {
        return Err(domain(format!("m = {m} must be at least 2")));
    }
    let q = m.powf(0.25);
    let value = (3.0 * m).sqrt() + q * m.ln().sqrt() / (4.0 * 3f64.powf(0.25)) + 1.5 * q;
    Ok(Prediction {
        formula: "sqrt(3m) + m^(1/4) sqrt(ln m) / (4 3^(1/4)) + 3 m^(1/4) / 2",
        inputs: BTreeMap::from([("m", m)]),
        value,
        omitted_terms: "none; upper bound valid for every graph with m edges",
        clamped: false,
    })
}

/// `(1-delta) n p - 4(1-delta)/delta`, clamped at 0.
pub fn predicted_sparse_lower(n: f64, p: f64, delta: f64) -> Result<Prediction, NumericsError> {
    if !(delta > 0.0 && delta <= 4.0 / 7.0) {
        return Err(domain(format!("delta = {delta} must lie in (0, 4/7]")));
    }
    if !(n >= 1.0 && p * n >= 1.0 && p <= 0.5) {
        return Err(domain(format!("need 1/n <= p <= 1/2 (n = {n}, p = {p})")));
    }
    let raw = (1.0 - delta) * n * p - 4.0 * (1.0 - delta) / delta;
    Ok(Prediction {
        formula: "(1-delta) n p - 4(1-delta)/delta",
        inputs: BTreeMap::from([("n", n), ("p", p), ("delta", delta)]),
        value: raw.max(0.0),
        omitted_terms: "holds with high probability only",
        clamped: raw < 0.0,
    })
}
