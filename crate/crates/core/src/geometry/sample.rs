//! Seeded samplers for the PPP, Matérn and second-order cluster processes.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::process::{MatClusterSpec, PointPattern, Site, SocpSpec, Tier, Window};
use crate::error::{domain, Result};

/// Poisson variate; zero mean gives zero.
pub fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean)
        .map(|d| d.sample(rng) as usize)
        .unwrap_or(0)
}

/// Uniform point in the disk of radius `r` around `c`.
pub fn uniform_in_disk<R: Rng + ?Sized>(c: [f64; 2], r: f64, rng: &mut R) -> [f64; 2] {
    let rho = r * rng.random::<f64>().sqrt();
    let th = 2.0 * PI * rng.random::<f64>();
    [c[0] + rho * th.cos(), c[1] + rho * th.sin()]
}

/// Distance with density ∝ (1 − e^{−r²/2σ²})·2r/R² on [0, R], by rejection
/// from the uniform-disk law.
pub fn reverse_gaussian_radius<R: Rng + ?Sized>(radius: f64, sigma: f64, rng: &mut R) -> f64 {
    let s2 = 2.0 * sigma * sigma;
    loop {
        let r = radius * rng.random::<f64>().sqrt();
        if rng.random::<f64>() < -(-r * r / s2).exp_m1() {
            return r;
        }
    }
}

/// Offset with the first-order cluster law: reverse-Gaussian radius, uniform angle.
pub fn first_order_offset<R: Rng + ?Sized>(spec: &SocpSpec, rng: &mut R) -> [f64; 2] {
    let r = reverse_gaussian_radius(spec.first_order_radius, spec.sigma, rng);
    let th = 2.0 * PI * rng.random::<f64>();
    [r * th.cos(), r * th.sin()]
}

fn ppp_points<R: Rng + ?Sized>(density: f64, window: &Window, rng: &mut R) -> Vec<[f64; 2]> {
    let n = poisson(density * window.area(), rng);
    (0..n)
        .map(|_| uniform_in_disk(window.center, window.radius, rng))
        .collect()
}

/// Homogeneous PPP on the window, tagged with `tier`.
pub fn sample_ppp<R: Rng + ?Sized>(
    density: f64,
    window: &Window,
    tier: Tier,
    rng: &mut R,
) -> Result<PointPattern> {
    if !(density >= 0.0) || !density.is_finite() {
        return Err(domain("PPP density must be non-negative"));
    }
    let sites = ppp_points(density, window, rng)
        .into_iter()
        .map(|pos| Site {
            pos,
            tier,
            parent: None,
            first_order: None,
        })
        .collect();
    Ok(PointPattern {
        sites,
        ..Default::default()
    })
}

/// Matérn cluster process; parents are drawn on the window dilated by R_M.
pub fn sample_mcp<R: Rng + ?Sized>(
    spec: &MatClusterSpec,
    window: &Window,
    rng: &mut R,
) -> Result<PointPattern> {
    spec.validate()?;
    let parents = ppp_points(spec.parent_density, &window.dilated(spec.radius), rng);
    let mut sites = Vec::new();
    for (i, &p) in parents.iter().enumerate() {
        for _ in 0..poisson(spec.mean_points, rng) {
            let pos = uniform_in_disk(p, spec.radius, rng);
            if window.contains(pos) {
                sites.push(Site {
                    pos,
                    tier: Tier::Sbs,
                    parent: Some(i as u32),
                    first_order: None,
                });
            }
        }
    }
    Ok(PointPattern {
        sites,
        parents,
        first_order: Vec::new(),
    })
}

/// Daughters of the given parents under the second-order cluster law; the
/// returned pattern keeps `parents` as its parent list.
pub fn socp_from_parents<R: Rng + ?Sized>(
    spec: &SocpSpec,
    parents: Vec<[f64; 2]>,
    window: &Window,
    rng: &mut R,
) -> PointPattern {
    let mut sites = Vec::new();
    let mut first_order = Vec::new();
    for (i, &p) in parents.iter().enumerate() {
        for _ in 0..poisson(spec.first_order_mean, rng) {
            let off = first_order_offset(spec, rng);
            let q = [p[0] + off[0], p[1] + off[1]];
            let j = first_order.len() as u32;
            first_order.push(q);
            for _ in 0..poisson(spec.second_order_mean, rng) {
                let pos = uniform_in_disk(q, spec.second_order_radius, rng);
                if window.contains(pos) {
                    sites.push(Site {
                        pos,
                        tier: Tier::Sbs,
                        parent: Some(i as u32),
                        first_order: Some(j),
                    });
                }
            }
        }
    }
    PointPattern {
        sites,
        parents,
        first_order,
    }
}

/// Second-order cluster process; parents are drawn on the window dilated by
/// R_S′ + R_S.
pub fn sample_socp<R: Rng + ?Sized>(
    spec: &SocpSpec,
    window: &Window,
    rng: &mut R,
) -> Result<PointPattern> {
    spec.validate()?;
    let reach = spec.first_order_radius + spec.second_order_radius;
    let parents = ppp_points(spec.parent_density, &window.dilated(reach), rng);
    Ok(socp_from_parents(spec, parents, window, rng))
}
