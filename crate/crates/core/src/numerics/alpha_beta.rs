use super::{domain, NumericsError};

/// The interval known to contain the crossing point of alpha and beta.
pub const P_STAR_BRACKET: (f64, f64) = (0.4012, 0.4013);

fn check_open_unit(x: f64, name: &str) -> Result<(), NumericsError> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} = {x} must lie in (0, 1)")))
    }
}

/// Coefficients, constant term first, of `Tk(u) = 1 - u^k - (1-u)^k` as an
/// integer polynomial in `u`.
fn t_coeffs(k: usize) -> [f64; 13] {
    let mut c = [0.0; 13];
    let mut binom = 1i64;
    for j in 1..=k {
        binom = binom * (k + 1 - j) as i64 / j as i64;
        c[j] = if j % 2 == 1 { binom as f64 } else { -binom as f64 };
    }
    c[k] -= 1.0;
    c
}

fn combine(terms: &[(f64, usize)]) -> [f64; 13] {
    let mut out = [0.0; 13];
    for &(w, k) in terms {
        for (o, c) in out.iter_mut().zip(t_coeffs(k)) {
            *o += w * c;
        }
    }
    out
}

fn horner(c: &[f64; 13], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * u + a)
}

/// Every `Tk` is symmetric under `x -> 1-x`. Evaluating the combinations
/// below as polynomials in the smaller of the two keeps full precision
/// near the ends of the interval, where their leading terms cancel.
fn small_side(x: f64) -> f64 {
    x.min(1.0 - x)
}

/// `x(1-x) / (2 T3 - T6)` with `Tk = 1 - x^k - (1-x)^k`.
pub fn alpha(x: f64) -> Result<f64, NumericsError> {
    check_open_unit(x, "x")?;
    let u = small_side(x);
    Ok(u * (1.0 - u) / horner(&combine(&[(2.0, 3), (-1.0, 6)]), u))
}

/// `(2x(1-x) + T8 - T12) / (3 T8 - 2 T12)`.
pub fn beta(x: f64) -> Result<f64, NumericsError> {
    check_open_unit(x, "x")?;
    let u = small_side(x);
    let mut num = combine(&[(1.0, 8), (-1.0, 12)]);
    num[1] += 2.0;
    num[2] -= 2.0;
    Ok(horner(&num, u) / horner(&combine(&[(3.0, 8), (-2.0, 12)]), u))
}

/// `1 / (z(9 - 2z))`, alpha as a function of `z = x(1-x)`.
pub fn alpha2(z: f64) -> Result<f64, NumericsError> {
    check_open_unit(z, "z")?;
    Ok(1.0 / (z * (9.0 - 2.0 * z)))
}

/// Beta as a rational function of `z = x(1-x)`.
///
/// Coefficients come from expanding `beta` symbolically in `z`.
pub fn beta2(z: f64) -> Result<f64, NumericsError> {
    check_open_unit(z, "z")?;
    let num = ((((2.0 * z - 36.0) * z + 103.0) * z - 96.0) * z + 34.0) * z - 2.0;
    let den = 4.0 * z * ((((z - 18.0) * z + 51.0) * z - 44.0) * z + 12.0);
    Ok(num / den)
}

/// Root of `alpha - beta` by bisection inside [`P_STAR_BRACKET`], to
/// interval width `tol`.
pub fn p_star(tol: f64) -> Result<f64, NumericsError> {
    if !(tol > 0.0) {
        return Err(domain(format!("tol = {tol} must be positive")));
    }
    let f = |x: f64| alpha(x).unwrap() - beta(x).unwrap();
    let (mut lo, mut hi) = P_STAR_BRACKET;
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
