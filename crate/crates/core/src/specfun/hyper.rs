//! Gauss hypergeometric function ₂F₁ on the negative real axis.

use crate::error::{domain, Error, Result};

const MAX_TERMS: usize = 2_000_000;
const SERIES_EPS: f64 = 1e-16;

/// Arguments below this are mapped through the Pfaff transformation so that
/// the series argument stays inside (1/3, 1) and the direct series is only
/// used where |z| ≤ 1/2.
const PFAFF_THRESHOLD: f64 = -0.5;

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Defining series Σ (a)_k (b)_k / ((c)_k k!) z^k for |z| < 1.
fn gauss_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    // tail of a series whose term ratio tends to z is bounded by term·|z|/(1−|z|)
    let tail_factor = if z > 0.0 { 1.0 / (1.0 - z) } else { 1.0 };
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || (term * tail_factor).abs() <= SERIES_EPS * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Series { terms: MAX_TERMS })
}

/// ₂F₁(a, b; c; z) for real z ≤ 0.
///
/// For z < −1/2 the Pfaff transformation
/// ₂F₁(a,b;c;z) = (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1)) moves the argument into
/// (1/3, 1), where the series has non-alternating terms for the parameter
/// ranges used by the success-probability sums.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(domain("hyp2f1 arguments must be finite"));
    }
    if is_non_positive_integer(c) {
        return Err(domain(format!("hyp2f1 undefined for c = {c}")));
    }
    if z > 0.0 {
        return Err(domain(format!("hyp2f1 supports z ≤ 0 only, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z >= PFAFF_THRESHOLD {
        return gauss_series(a, b, c, z);
    }
    let w = z / (z - 1.0);
    // prefer whichever Pfaff image terminates
    if is_non_positive_integer(c - a) && !is_non_positive_integer(c - b) {
        Ok((1.0 - z).powf(-b) * gauss_series(c - a, b, c, w)?)
    } else {
        Ok((1.0 - z).powf(-a) * gauss_series(a, c - b, c, w)?)
    }
}
