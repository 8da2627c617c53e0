//! Derived constants of the dense-graph contraction schedule.

use serde::Serialize;

use super::StrategyError;
use crate::numerics::{alpha, one_minus_powers};

/// `floor(x^e)` that does not lose an integer to rounding: `100000^0.6`
/// evaluates to 999.99999... in floating point but must give 1000.
pub fn floor_pow(x: f64, e: f64) -> usize {
    let v = x.powf(e);
    let nearest = v.round();
    if (v - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as usize
    } else {
        v.floor() as usize
    }
}

/// Every constant of the schedule. Vertex sets are `B = [m]` and
/// `A = [n] \ [m]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyParams {
    pub n: usize,
    pub p: f64,
    pub eps: f64,
    pub delta: f64,
    pub alpha: f64,
    pub m: usize,
    pub a: usize,
    pub s: usize,
    pub r: usize,
    pub c: f64,
    pub ell: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda2_prime: f64,
    pub lambda3: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub nu2: f64,
    pub nu3: f64,
    pub nu4: f64,
}

/// Computes all constants for `(n, p, eps, delta)`. A failing precondition
/// is reported by name together with the numbers involved.
pub fn schedule_params(n: usize, p: f64, eps: f64, delta: f64) -> Result<StrategyParams, StrategyError> {
    let invalid = |msg: String| Err(StrategyError::InvalidParameter(msg));
    if !(p > 0.0 && p < 1.0) {
        return invalid(format!("p = {p} must lie in (0, 1)"));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return invalid(format!("eps = {eps} must lie in (0, 1/2)"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return invalid(format!("delta = {delta} must lie in (0, 1)"));
    }
    if !(3.0 - 6.0 * eps - 4.0 * delta > 0.0) {
        return invalid(format!("3 - 6 eps - 4 delta = {} must be positive", 3.0 - 6.0 * eps - 4.0 * delta));
    }
    if n < 4 {
        return invalid(format!("n = {n} is too small"));
    }

    let nf = n as f64;
    let q = 1.0 - p;
    let pq = p * q;
    let alpha = alpha(p).map_err(|e| StrategyError::InvalidParameter(e.to_string()))?;
    let a_real = nf.powf(1.0 - delta);
    let m = n - floor_pow(nf, 1.0 - delta);
    let a = (alpha * nf).floor() as usize;
    let s = floor_pow(nf, 0.5 + eps);

    let fail = |name: &'static str, detail: String| Err(StrategyError::Precondition { name, detail });
    if 2 * a > m {
        return fail("2a <= m", format!("2*{a} > {m}"));
    }
    if m > 3 * a {
        return fail("m <= 3a", format!("{m} > 3*{a}"));
    }
    if 2.0 * alpha * nf > m as f64 {
        return fail("2 alpha n <= m", format!("{} > {m}", 2.0 * alpha * nf));
    }
    if m + 2 * s > n {
        return fail("m <= n - 2s", format!("{m} > {n} - 2*{s}"));
    }

    let mf = m as f64;
    let sf = s as f64;
    let r = (m + a) / 2;
    let c = (2.0 * pq * (1.0 - 2.0 * pq) * (3.0 - 6.0 * eps - 4.0 * delta)).sqrt();
    let ell = 2.0 * nf.sqrt();
    let slack = nf.powf(0.5 + eps / 2.0);
    let t = |k| one_minus_powers(p, k);

    let lambda1 = 2.0 * pq * mf - c * (mf * mf.ln()).sqrt();
    let lambda2 = 2.0 * pq * a_real + nf.sqrt();
    let lambda2_prime = 2.0 * pq * a_real - 2.0 * pq * pq * sf + nf.sqrt();
    let lambda3 = pq * nf + nf.powf(0.5 + eps);
    let mu1 = pq * mf + slack;
    let mu2 = 2.0 * pq * mf + slack;
    let rho2 = 2.0 * pq * (a_real - 2.0 * sf) + t(4) * sf + slack;
    let rho3 = 3.0 * pq * (a_real - 2.0 * sf) + t(6) * sf + slack;
    let nu2 = 2.0 * pq * mf + slack;
    let nu3 = 2.0 * pq * nf - 3.0 * pq * a_real + slack;
    // the quadruple-phase bound is used directly instead of an unnamed
    // constant below 2pq
    let nu4 = (t(8) * (3.0 * alpha - 1.0) + t(12) * (1.0 - 2.0 * alpha)) * nf + slack;

    Ok(StrategyParams {
        n,
        p,
        eps,
        delta,
        alpha,
        m,
        a,
        s,
        r,
        c,
        ell,
        lambda1,
        lambda2,
        lambda2_prime,
        lambda3,
        mu1,
        mu2,
        rho2,
        rho3,
        nu2,
        nu3,
        nu4,
    })
}

impl StrategyParams {
    /// The eight terms whose maximum bounds the width of the schedule.
    pub fn lemma_terms(&self) -> [(&'static str, f64); 8] {
        let (n, m, s, r) = (self.n as f64, self.m as f64, self.s as f64, self.r as f64);
        let l3 = 3.0 * self.ell;
        [
            ("n - s - r + 3l", n - s - r + l3),
            ("s + mu1", s + self.mu1),
            ("lambda1 + lambda2", self.lambda1 + self.lambda2),
            ("lambda2' + mu2 + 3l", self.lambda2_prime + self.mu2 + l3),
            ("s + lambda3", s + self.lambda3),
            ("rho2 + nu2 + 3l", self.rho2 + self.nu2 + l3),
            ("rho3 + nu3 + 3l", self.rho3 + self.nu3 + l3),
            ("n - m - s + nu4 + 3l", n - m - s + self.nu4 + l3),
        ]
    }

    pub fn lemma_bound(&self) -> f64 {
        self.lemma_terms().iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Threshold for a frozen class of the given size (2 or 3).
    pub fn rho(&self, size: usize) -> Option<f64> {
        match size {
            2 => Some(self.rho2),
            3 => Some(self.rho3),
            _ => None,
        }
    }

    pub fn b_side(&self) -> Vec<usize> {
        (1..=self.m).collect()
    }

    pub fn a_side(&self) -> Vec<usize> {
        (self.m + 1..=self.n).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_at_1e5() {
        let p = schedule_params(100_000, 0.5, 0.1, 0.25).unwrap();
        assert_eq!((p.m, p.a, p.s, p.r), (94377, 47058, 1000, 70717));
        assert!((p.alpha - 8.0 / 17.0).abs() < 1e-12);
        assert!((p.ell - 632.455532).abs() < 1e-5);
        let bound = p.lemma_bound();
        assert!(p.lemma_terms().iter().any(|t| t.1 == bound));
    }

    #[test]
    fn floor_pow_survives_rounding() {
        assert_eq!(floor_pow(100_000.0, 0.6), 1000);
        assert_eq!(floor_pow(1000.0, 1.0 / 3.0), 10);
        assert_eq!(floor_pow(10.0, 0.5), 3);
    }

    #[test]
    fn failing_preconditions_are_named() {
        match schedule_params(3000, 0.5, 0.1, 0.25) {
            Err(StrategyError::Precondition { name, .. }) => assert_eq!(name, "2a <= m"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            schedule_params(100_000, 0.5, 0.1, 0.0),
            Err(StrategyError::InvalidParameter(_))
        ));
        assert!(matches!(
            schedule_params(100_000, 1.0, 0.1, 0.2),
            Err(StrategyError::InvalidParameter(_))
        ));
        assert!(schedule_params(100_000, 0.5, 0.45, 0.4).is_err());
    }
}
