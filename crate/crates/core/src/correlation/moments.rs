//! First and second interference moments and the cluster term F(c, R).

use std::f64::consts::PI;

use super::kernel::{cross_integral, g2_integral, g_integral, lens_weighted_integral};
use crate::error::{domain, Result};
use crate::model::RadioParams;

fn check_cluster(c: f64, radius: f64) -> Result<()> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(domain("mean cluster size must be non-negative"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(domain("cluster radius must be positive"));
    }
    Ok(())
}

/// Mean interference E[h] λ ∫g_ε; identical for PPP and both cluster processes.
pub fn mean_interference(density: f64, radio: &RadioParams) -> f64 {
    radio.fading_mean * density * g_integral(radio)
}

/// F(c, R) = (c/π²R⁴) ∬ g_ε(X) g_ε(Y) A_R(|X − Y|) dX dY by nested quadrature.
pub fn f_exact(c: f64, radius: f64, radio: &RadioParams) -> Result<f64> {
    check_cluster(c, radius)?;
    if c == 0.0 {
        return Ok(0.0);
    }
    Ok(c / (PI * PI * radius.powi(4)) * lens_weighted_integral(radius, radio)?)
}

/// Large-R form (4cπ³/α²R²) ε^{(4−2α)/α} csc²(2π/α).
pub fn f_approx(c: f64, radius: f64, radio: &RadioParams) -> Result<f64> {
    check_cluster(c, radius)?;
    let a = radio.alpha;
    let csc = 1.0 / (2.0 * PI / a).sin();
    Ok(4.0 * c * PI.powi(3) / (a * a * radius * radius)
        * radio.eps.powf((4.0 - 2.0 * a) / a)
        * csc
        * csc)
}

/// E[I(U₁,t₁) I(U₂,t₂)] for probes `u` apart, given a precomputed F.
pub fn mean_product_with_f(density: f64, f: f64, u: f64, radio: &RadioParams) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(domain("separation must be non-negative"));
    }
    if density == 0.0 {
        return Ok(0.0);
    }
    let gi = g_integral(radio);
    let theta = cross_integral(u, radio)?;
    Ok(radio.fading_mean.powi(2) * density * (theta + density * gi * gi + f))
}

/// E[I(U₁,t₁) I(U₂,t₂)] with F(c, R) from [`f_exact`].
pub fn mean_product(density: f64, c: f64, radius: f64, u: f64, radio: &RadioParams) -> Result<f64> {
    if density == 0.0 {
        return Ok(0.0);
    }
    mean_product_with_f(density, f_exact(c, radius, radio)?, u, radio)
}

/// E[I²] at a single space-time point.
pub fn second_moment(density: f64, c: f64, radius: f64, radio: &RadioParams) -> Result<f64> {
    if density == 0.0 {
        return Ok(0.0);
    }
    let f = f_exact(c, radius, radio)?;
    let gi = g_integral(radio);
    Ok(radio.fading_second_moment * density * g2_integral(radio)
        + radio.fading_mean.powi(2) * density * (density * gi * gi + f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radio() -> RadioParams {
        RadioParams::new(4.0, 0.01).unwrap()
    }

    #[test]
    fn mean_interference_values() {
        assert_eq!(mean_interference(0.0, &radio()), 0.0);
        assert!((mean_interference(0.3, &radio()) - 1.5 * PI * PI).abs() < 1e-10);
    }

    #[test]
    fn f_approx_value() {
        let f = f_approx(3.0, 50.0, &radio()).unwrap();
        assert!((f - 0.930_188_300_408_994_6).abs() < 1e-12);
        assert_eq!(f_approx(0.0, 50.0, &radio()).unwrap(), 0.0);
    }

    #[test]
    fn f_exact_linear_in_c() {
        let r = radio();
        let f3 = f_exact(3.0, 20.0, &r).unwrap();
        let f6 = f_exact(6.0, 20.0, &r).unwrap();
        assert!((f6 / f3 - 2.0).abs() < 1e-14);
        assert_eq!(f_exact(0.0, 20.0, &r).unwrap(), 0.0);
        assert!(f_exact(-1.0, 20.0, &r).is_err());
    }

    #[test]
    fn moments_without_clustering() {
        let r = radio();
        assert_eq!(mean_product(0.0, 3.0, 5.0, 1.0, &r).unwrap(), 0.0);
        let m = mean_interference(0.3, &r);
        let s = second_moment(0.3, 0.0, 5.0, &r).unwrap();
        assert!((s - m * m - 0.3 * 2.0 * g2_integral(&r)).abs() < 1e-9 * s);
        let p0 = mean_product(0.3, 0.0, 5.0, 0.0, &r).unwrap();
        assert!((p0 - m * m - 0.3 * g2_integral(&r)).abs() < 1e-9 * p0);
        let pc = mean_product(0.3, 3.0, 5.0, 0.0, &r).unwrap();
        assert!(pc > p0);
        assert!(second_moment(0.3, 3.0, 5.0, &r).unwrap() - m * m > 0.0);
    }
}
