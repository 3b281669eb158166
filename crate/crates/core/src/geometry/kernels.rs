//! Distance densities, the lens-area kernel and association radii.

use std::f64::consts::PI;

use super::process::SocpSpec;
use crate::error::{domain, Result};
use crate::model::{HcnModel, SbsTier};

/// Serving-distance density 2r/D² on [0, D].
pub fn pdf_serving_distance(r: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(domain("association radius must be positive"));
    }
    Ok(if (0.0..=d).contains(&r) {
        2.0 * r / (d * d)
    } else {
        0.0
    })
}

/// Inverse-CDF companion of [`pdf_serving_distance`]: D√u.
pub fn serving_distance_quantile(u: f64, d: f64) -> f64 {
    d * u.sqrt()
}

/// Area density of a daughter around its parent in a Matérn cluster.
pub fn matern_density(r: f64, radius: f64) -> f64 {
    if r <= radius {
        1.0 / (PI * radius * radius)
    } else {
        0.0
    }
}

/// Area density of a first-order point around its parent.
pub fn first_order_density(r: f64, spec: &SocpSpec) -> f64 {
    if r > spec.first_order_radius {
        return 0.0;
    }
    let s2 = 2.0 * spec.sigma * spec.sigma;
    -(-r * r / s2).exp_m1() / spec.first_order_norm()
}

/// Intersection area of two radius-`radius` disks whose centres are `r` apart.
pub fn lens_area(r: f64, radius: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(domain("lens distance must be non-negative"));
    }
    if !(radius > 0.0) {
        return Err(domain("lens radius must be positive"));
    }
    Ok(lens_area_unchecked(r, radius))
}

pub(crate) fn lens_area_unchecked(r: f64, radius: f64) -> f64 {
    if r >= 2.0 * radius {
        return 0.0;
    }
    let h = r / (2.0 * radius);
    2.0 * radius * radius * h.acos() - r * (radius * radius - 0.25 * r * r).max(0.0).sqrt()
}

/// Association radii (D_m, D_s) of the MBS and SBS cells.
pub fn association_radii(model: &HcnModel) -> Result<(f64, f64)> {
    if let Some(r) = model.radii {
        return Ok(r);
    }
    let lm = model.mbs_density;
    let (total, ratio) = match &model.sbs {
        SbsTier::Ppp { density } => (lm + density, 1.0),
        SbsTier::Mcp(s) => (lm + s.parent_density, s.mean_points),
        SbsTier::Socp(s) => (
            lm + s.first_order_mean * s.parent_density,
            s.first_order_mean * s.second_order_mean,
        ),
    };
    if !(total > 0.0) || !(ratio > 0.0) {
        return Err(domain("association radii need positive densities"));
    }
    let d_m = (PI * total).powf(-0.5);
    Ok((d_m, d_m / ratio.sqrt()))
}
