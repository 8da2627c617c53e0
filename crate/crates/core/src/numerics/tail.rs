//! Lower-tail bounds for the binomial distribution and an exact CDF to check
//! them against.

use super::{domain, NumericsError};

/// `Pr[Bin(n, p) <= (p - eps) n]` under the two closed-form bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBoundQuery {
    pub n: u64,
    pub p: f64,
    pub eps: f64,
}

impl TailBoundQuery {
    /// Largest integer `k <= (p - eps) n`, or `None` when that is negative.
    /// A small guard absorbs rounding when `(p - eps) n` is an integer.
    pub fn cutoff(&self) -> Option<u64> {
        let x = (self.p - self.eps) * self.n as f64;
        if x < -1e-9 {
            None
        } else {
            Some((x + 1e-9).floor() as u64)
        }
    }

    /// Exact `Pr[X <= (p - eps) n]`.
    pub fn exact(&self) -> Result<f64, NumericsError> {
        match self.cutoff() {
            None => Ok(0.0),
            Some(k) => exact_binom_cdf(self.n, self.p, k.min(self.n)),
        }
    }

    fn check_p(&self) -> Result<(), NumericsError> {
        if self.p > 0.0 && self.p < 1.0 {
            Ok(())
        } else {
            Err(domain(format!("p = {} must lie in (0, 1)", self.p)))
        }
    }
}

/// `ln C(n, k)` accumulated as a running sum of logs; exact enough for the
/// sizes used here and free of overflow.
fn ln_choose_iter(n: u64) -> impl Iterator<Item = f64> {
    let mut acc = 0.0;
    (0..=n).map(move |i| {
        if i > 0 {
            acc += ((n - i + 1) as f64).ln() - (i as f64).ln();
        }
        acc
    })
}

/// `sum_{i <= k} C(n,i) p^i (1-p)^(n-i)`, summed in log space.
pub fn exact_binom_cdf(n: u64, p: f64, k: u64) -> Result<f64, NumericsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("p = {p} must lie in [0, 1]")));
    }
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    if k == n || p == 0.0 {
        return Ok(1.0);
    }
    if p == 1.0 {
        return Ok(0.0);
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let terms: Vec<f64> = ln_choose_iter(n)
        .take(k as usize + 1)
        .enumerate()
        .map(|(i, lc)| lc + i as f64 * lp + (n - i as u64) as f64 * lq)
        .collect();
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    Ok((max + sum.ln()).exp().min(1.0))
}

/// `exp(-n eps^2 / (2pq) + n eps^3 / (2 p^2 q^2))`, valid for `0 < eps <= 3p/10`.
pub fn binom_upper_bound(q: &TailBoundQuery) -> Result<f64, NumericsError> {
    q.check_p()?;
    if !(q.eps > 0.0) {
        return Err(domain(format!("eps = {} must be positive", q.eps)));
    }
    if q.eps > 0.3 * q.p {
        return Err(domain(format!(
            "eps <= 3p/10 fails: eps = {} > {}",
            q.eps,
            0.3 * q.p
        )));
    }
    let (n, pq) = (q.n as f64, q.p * (1.0 - q.p));
    Ok((-n * q.eps.powi(2) / (2.0 * pq) + n * q.eps.powi(3) / (2.0 * pq * pq)).exp())
}

/// `exp(-n eps^2/(2pq) - 3 sqrt(n eps^2)/(2pq) - 4 n eps^3/(p^2 q^2)) / (2 sqrt 2)`,
/// valid for `n >= 4` and `1/sqrt(n) <= eps <= min(p/2, 1-p)`.
pub fn binom_lower_bound(q: &TailBoundQuery) -> Result<f64, NumericsError> {
    q.check_p()?;
    if q.n < 4 {
        return Err(domain(format!("n >= 4 fails: n = {}", q.n)));
    }
    let n = q.n as f64;
    if q.eps < 1.0 / n.sqrt() {
        return Err(domain(format!(
            "eps >= 1/sqrt(n) fails: eps = {} < {}",
            q.eps,
            1.0 / n.sqrt()
        )));
    }
    let cap = (q.p / 2.0).min(1.0 - q.p);
    if q.eps > cap {
        return Err(domain(format!(
            "eps <= min(p/2, 1-p) fails: eps = {} > {cap}",
            q.eps
        )));
    }
    let pq = q.p * (1.0 - q.p);
    let exponent = -n * q.eps.powi(2) / (2.0 * pq)
        - 3.0 * (n * q.eps.powi(2)).sqrt() / (2.0 * pq)
        - 4.0 * n * q.eps.powi(3) / (pq * pq);
    Ok(exponent.exp() / (2.0 * std::f64::consts::SQRT_2))
}

/// Relative entropy `x ln(x/y) + (1-x) ln((1-x)/(1-y))` with `0 ln 0 = 0`.
pub fn kl_div(x: f64, y: f64) -> Result<f64, NumericsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("x = {x} must lie in [0, 1]")));
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(domain(format!("y = {y} must lie in (0, 1)")));
    }
    let term = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a * (a / b).ln() };
    Ok(term(x, y) + term(1.0 - x, 1.0 - y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_examples() {
        assert!((exact_binom_cdf(4, 0.5, 1).unwrap() - 0.3125).abs() < 1e-15);
        assert_eq!(exact_binom_cdf(9, 0.3, 9).unwrap(), 1.0);
        assert_eq!(exact_binom_cdf(9, 0.0, 0).unwrap(), 1.0);
        assert!(exact_binom_cdf(3, 0.5, 4).is_err());
    }

    #[test]
    fn cdf_matches_direct_sum() {
        // direct products are fine at n = 30
        let (n, p) = (30u64, 0.37f64);
        let mut c = 1.0f64;
        let mut acc = 0.0;
        for k in 0..=n {
            if k > 0 {
                c = c * (n - k + 1) as f64 / k as f64;
            }
            acc += c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
            assert!((exact_binom_cdf(n, p, k).unwrap() - acc).abs() < 1e-13);
        }
    }

    #[test]
    fn upper_example() {
        let q = TailBoundQuery { n: 100, p: 0.5, eps: 0.1 };
        let bound = binom_upper_bound(&q).unwrap();
        assert!((bound - (-1.2f64).exp()).abs() < 1e-12);
        let exact = q.exact().unwrap();
        assert!((exact - 0.02844).abs() < 1e-4, "{exact}");
        assert!(exact <= bound);
    }

    #[test]
    fn lower_example_and_preconditions() {
        let q = TailBoundQuery { n: 400, p: 0.5, eps: 0.05 };
        assert!(binom_lower_bound(&q).unwrap() <= exact_binom_cdf(400, 0.5, 180).unwrap());
        let small = TailBoundQuery { n: 400, p: 0.5, eps: 0.04 };
        assert!(binom_lower_bound(&small).is_err());
        assert!(binom_upper_bound(&TailBoundQuery { n: 10, p: 0.5, eps: 0.2 }).is_err());
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_div(0.5, 0.5).unwrap(), 0.0);
        assert!(kl_div(0.0, 0.3).unwrap() > 0.0);
        assert!(kl_div(0.5, 1.0).is_err());
    }
}
