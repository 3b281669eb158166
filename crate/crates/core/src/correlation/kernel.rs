//! Smoothed path loss and its planar integrals.

use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::lens_area_unchecked;
use crate::model::RadioParams;
use crate::specfun::{integrate_with_breaks, ErrorSlot, QuadratureSpec};

/// g_ε(x) = 1/(ε + x^α).
pub fn g_eps(x: f64, radio: &RadioParams) -> f64 {
    1.0 / (radio.eps + x.powf(radio.alpha))
}

#[inline]
fn g_fast(x: f64, eps: f64, alpha: f64) -> f64 {
    if alpha == 4.0 {
        let x2 = x * x;
        1.0 / (eps + x2 * x2)
    } else {
        1.0 / (eps + x.powf(alpha))
    }
}

/// ∫₀^∞ r/(r^α + ε) dr = α⁻¹ ε^{(2−α)/α} π csc(2π/α).
pub fn radial_integral(radio: &RadioParams) -> f64 {
    let a = radio.alpha;
    (1.0 / a) * radio.eps.powf((2.0 - a) / a) * PI / (2.0 * PI / a).sin()
}

/// ∫ g_ε(X) dX over the plane.
pub fn g_integral(radio: &RadioParams) -> f64 {
    2.0 * PI * radial_integral(radio)
}

/// ∫ g_ε(X)² dX over the plane, from the Beta integral after u = r^α.
pub fn g2_integral(radio: &RadioParams) -> f64 {
    let d = radio.delta();
    2.0 * PI * (1.0 / radio.alpha) * radio.eps.powf(d - 2.0) * (1.0 - d) * PI / (PI * d).sin()
}

/// Characteristic radius ε^{1/α} of the smoothed kernel.
pub fn kernel_scale(radio: &RadioParams) -> f64 {
    radio.eps.powf(1.0 / radio.alpha)
}

fn breaks(mut pts: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    pts.retain(|p| *p > lo && *p < hi);
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| *a == *b || (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    pts
}

pub(crate) fn inner_spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-300,
        max_subdivisions: 2000,
        ..Default::default()
    }
}

/// θ(u) = ∫ g_ε(X) g_ε(X − u) dX, in polar coordinates about one probe.
pub fn cross_integral(u: f64, radio: &RadioParams) -> Result<f64> {
    if u == 0.0 {
        return Ok(g2_integral(radio));
    }
    let (eps, alpha) = (radio.eps, radio.alpha);
    let w = kernel_scale(radio);
    let outer_spec = QuadratureSpec {
        rel_tol: 1e-9,
        abs_tol: 1e-300,
        max_subdivisions: 4000,
        ..Default::default()
    };
    let slot = ErrorSlot::new();
    let inner = |r: f64| -> Result<f64> {
        let f = |phi: f64| {
            g_fast(
                (r * r + u * u - 2.0 * r * u * phi.cos()).max(0.0).sqrt(),
                eps,
                alpha,
            )
        };
        let near = 4.0 * w / r.max(u);
        let pts = breaks(vec![0.25 * near, near], 0.0, PI);
        Ok(2.0 * integrate_with_breaks(f, &pts, &inner_spec())?.value)
    };
    let outer = |r: f64| r * g_fast(r, eps, alpha) * slot.take(inner(r));
    let pts = breaks(
        vec![w, 4.0 * w, u - 2.0 * w, u, u + 2.0 * w, 2.0 * u + 4.0 * w],
        0.0,
        f64::INFINITY,
    );
    let est = integrate_with_breaks(outer, &pts, &outer_spec);
    slot.finish(est.map(|e| e.value))
}

/// ∬ g_ε(X) g_ε(Y) A_R(|X − Y|) dX dY.
///
/// With Y = X − s the double integral becomes 2π∫₀^{2R} A_R(s) θ(s) s ds,
/// a one-dimensional integral of the cross integral against the lens kernel.
pub fn lens_weighted_integral(radius: f64, radio: &RadioParams) -> Result<f64> {
    let w = kernel_scale(radio);
    let two_r = 2.0 * radius;
    let spec = QuadratureSpec {
        rel_tol: 1e-8,
        abs_tol: 1e-300,
        max_subdivisions: 2000,
        ..Default::default()
    };
    let slot = ErrorSlot::new();
    let f = |s: f64| lens_area_unchecked(s, radius) * s * slot.take(cross_integral(s, radio));
    let pts = breaks(vec![0.5 * w, w, 2.0 * w, 4.0 * w, 16.0 * w], 0.0, two_r);
    let est = integrate_with_breaks(f, &pts, &spec);
    slot.finish(est.map(|e| 2.0 * PI * e.value))
}
