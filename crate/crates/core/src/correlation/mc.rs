//! Monte Carlo estimate of the interference correlation coefficient.

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use super::kernel::kernel_scale;
use super::zeta::{CorrelationReport, ZetaMethod};
use crate::error::{domain, Error, Result};
use crate::geometry::{sample_mcp, sample_ppp, sample_socp, PointPattern, Tier, Window};
use crate::model::{RadioParams, SbsTier};
use crate::rng::{substream, Purpose};
use crate::stats::pearson_jackknife;

pub const MIN_ZETA_TRIALS: usize = 1000;

/// One interferer field of the given variant on `window`.
pub fn sample_tier<R: Rng + ?Sized>(
    tier: &SbsTier,
    window: &Window,
    rng: &mut R,
) -> Result<PointPattern> {
    match tier {
        SbsTier::Ppp { density } => sample_ppp(*density, window, Tier::Sbs, rng),
        SbsTier::Mcp(s) => sample_mcp(s, window, rng),
        SbsTier::Socp(s) => sample_socp(s, window, rng),
    }
}

/// (c, R) pair that enters the cluster term for `tier`.
pub fn cluster_pair(tier: &SbsTier) -> (f64, f64) {
    match tier {
        SbsTier::Ppp { .. } => (0.0, 0.0),
        SbsTier::Mcp(s) => (s.mean_points, s.radius),
        SbsTier::Socp(s) => (s.second_order_mean, s.second_order_radius),
    }
}

/// Smoothed interference with fresh unit-mean exponential fading.
pub fn smoothed_interference<R: Rng + ?Sized>(
    pp: &PointPattern,
    at: [f64; 2],
    radio: &RadioParams,
    rng: &mut R,
) -> f64 {
    let (eps, alpha) = (radio.eps, radio.alpha);
    pp.sites
        .iter()
        .map(|s| {
            let d2 = (s.pos[0] - at[0]).powi(2) + (s.pos[1] - at[1]).powi(2);
            let pl = if alpha == 4.0 {
                d2 * d2
            } else {
                d2.powf(0.5 * alpha)
            };
            let h: f64 = rng.sample(Exp1);
            h / (eps + pl)
        })
        .sum()
}

/// Pearson correlation of I_ε at two probes `u` apart in distinct slots,
/// across `trials` independent network draws.
pub fn estimate_zeta_mc(
    tier: &SbsTier,
    u: f64,
    trials: usize,
    seed: u64,
    radio: &RadioParams,
) -> Result<CorrelationReport> {
    if trials < MIN_ZETA_TRIALS {
        return Err(domain(format!("need at least {MIN_ZETA_TRIALS} trials")));
    }
    if !(u >= 0.0) {
        return Err(domain("separation must be non-negative"));
    }
    let (c, radius) = cluster_pair(tier);
    let w = 10.0 * radius.max(1.0 / kernel_scale(radio)).max(u);
    let window = Window::centered(w)?;
    let p1 = [-0.5 * u, 0.0];
    let p2 = [0.5 * u, 0.0];
    let pairs: Vec<Result<(f64, f64)>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut prng = substream(seed, i, Purpose::Pattern);
            let mut frng = substream(seed, i, Purpose::Fading);
            let pp = sample_tier(tier, &window, &mut prng)?;
            let a = smoothed_interference(&pp, p1, radio, &mut frng);
            let b = smoothed_interference(&pp, p2, radio, &mut frng);
            Ok((a, b))
        })
        .collect();
    let mut x = Vec::with_capacity(trials);
    let mut y = Vec::with_capacity(trials);
    for p in pairs {
        let (a, b) = p?;
        x.push(a);
        y.push(b);
    }
    if x.iter().chain(&y).all(|v| *v == 0.0) {
        return Err(Error::Estimation(
            "all sampled interference values are zero".into(),
        ));
    }
    let (zeta, se) = pearson_jackknife(&x, &y)?;
    Ok(CorrelationReport {
        zeta,
        f: f64::NAN,
        theta: f64::NAN,
        theta_prime: f64::NAN,
        c,
        radius,
        alpha: radio.alpha,
        eps: radio.eps,
        u,
        method: ZetaMethod::MonteCarlo,
        stderr: Some(se),
    })
}
