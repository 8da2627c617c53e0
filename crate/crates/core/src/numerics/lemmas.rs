//! Elementary inequalities in `p` and `q = 1 - p` as checkable predicates.

/// `1 - x^k - (1-x)^k`, evaluated as the positive binomial sum
/// `sum_{i=1}^{k-1} C(k,i) x^i (1-x)^(k-i)` so it stays accurate near 0 and 1.
pub fn one_minus_powers(x: f64, k: u32) -> f64 {
    let y = 1.0 - x;
    let mut coeff = 1.0;
    let mut sum = 0.0;
    for i in 1..k {
        coeff = coeff * (k - i + 1) as f64 / i as f64;
        sum += coeff * x.powi(i as i32) * y.powi((k - i) as i32);
    }
    sum
}

/// Outcome of checking one inequality family.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub checks: usize,
    /// Smallest `rhs - lhs` seen (negative means a violation beyond tolerance
    /// for the non-strict families).
    pub min_margin: f64,
    pub violations: Vec<String>,
}

impl LemmaCheck {
    fn new(name: &'static str) -> Self {
        LemmaCheck {
            name,
            checks: 0,
            min_margin: f64::INFINITY,
            violations: Vec::new(),
        }
    }

    /// Records `lhs <= rhs` (or `<` when `strict`). Non-strict checks allow
    /// 1e-12 of rounding, since several members of these families hold with
    /// equality.
    fn record(&mut self, lhs: f64, rhs: f64, strict: bool, what: String) {
        let margin = rhs - lhs;
        self.checks += 1;
        self.min_margin = self.min_margin.min(margin);
        let ok = if strict {
            margin > 0.0
        } else {
            margin >= -super::identity_tolerance(rhs)
        };
        if !ok {
            self.violations.push(format!("{what}: lhs {lhs:e} rhs {rhs:e}"));
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PqLemmaReport {
    pub p: f64,
    pub k_max: u32,
    pub lemmas: Vec<LemmaCheck>,
}

impl PqLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.lemmas.iter().all(|l| l.violations.is_empty())
    }

    pub fn violation_count(&self) -> usize {
        self.lemmas.iter().map(|l| l.violations.len()).sum()
    }
}

/// Checks, for this `p`:
/// * `T_k / k <= T_{k-1}/(k-1) - (2^k-2k-2)/(k(k-1)) (pq)^{k/2}` for `3 <= k <= k_max`;
/// * `T_k <= kpq - ((k-4) 2^{k-2} + 2)(pq)^{k/2}` for `2 <= k <= k_max`;
/// * `T_m + T_n > T_{m+n}` for `2 <= m, n <= k_max` (strict when `0 < p < 1`);
/// * `sum_{i<=k} C(n,i) <= (en/k)^k` for `1 <= k <= n <= k_max`;
///
/// where `T_k = 1 - p^k - q^k`. Returns `None` for `p` outside `[0, 1]` or
/// `k_max < 2`.
pub fn check_pq_lemmas(p: f64, k_max: u32) -> Option<PqLemmaReport> {
    if !(0.0..=1.0).contains(&p) || k_max < 2 {
        return None;
    }
    let q = 1.0 - p;
    let pq = p * q;
    let t = |k: u32| one_minus_powers(p, k);

    let mut ratio = LemmaCheck::new("ratio");
    for k in 3..=k_max {
        let kf = k as f64;
        let lhs = t(k) / kf;
        let rhs = t(k - 1) / (kf - 1.0)
            - (2f64.powi(k as i32) - 2.0 * kf - 2.0) / (kf * (kf - 1.0)) * pq.powf(kf / 2.0);
        ratio.record(lhs, rhs, false, format!("k={k}"));
    }

    let mut linear = LemmaCheck::new("linear");
    for k in 2..=k_max {
        let kf = k as f64;
        let rhs = kf * pq - ((kf - 4.0) * 2f64.powi(k as i32 - 2) + 2.0) * pq.powf(kf / 2.0);
        linear.record(t(k), rhs, false, format!("k={k}"));
    }

    let mut additive = LemmaCheck::new("additive");
    let strict = p > 0.0 && p < 1.0;
    for m in 2..=k_max {
        for n in 2..=k_max {
            additive.record(t(m + n), t(m) + t(n), strict, format!("m={m} n={n}"));
        }
    }

    let mut binomial_sum = LemmaCheck::new("binomial_sum");
    for n in 1..=k_max {
        let mut coeff = 1.0;
        let mut sum = 1.0;
        for k in 1..=n {
            coeff = coeff * (n - k + 1) as f64 / k as f64;
            sum += coeff;
            let rhs = (std::f64::consts::E * n as f64 / k as f64).powi(k as i32);
            binomial_sum.record(sum, rhs, false, format!("n={n} k={k}"));
        }
    }

    Some(PqLemmaReport {
        p,
        k_max,
        lemmas: vec![ratio, linear, additive, binomial_sum],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_powers_matches_direct_form() {
        for x in [0.1f64, 0.3, 0.5, 0.77] {
            for k in 1..10u32 {
                let direct = 1.0 - x.powi(k as i32) - (1.0 - x).powi(k as i32);
                assert!((one_minus_powers(x, k) - direct).abs() < 1e-14);
            }
        }
        assert_eq!(one_minus_powers(0.0, 5), 0.0);
        assert_eq!(one_minus_powers(1.0, 5), 0.0);
    }

    #[test]
    fn lemmas_hold_at_0_3() {
        let r = check_pq_lemmas(0.3, 12).unwrap();
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn boundary_equality_case() {
        // p = 0: 1 - 0 - 1 = 0 <= 0
        let r = check_pq_lemmas(0.0, 5).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.lemmas[1].min_margin, 0.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(check_pq_lemmas(1.5, 5).is_none());
        assert!(check_pq_lemmas(0.5, 1).is_none());
    }
}
