//! Typical-link simulation of the joint success probability.

use std::io::Write;

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use super::SimConfig;
use crate::correlation::sample_tier;
use crate::csvfmt::g9;
use crate::error::Result;
use crate::geometry::{
    association_radii, first_order_offset, poisson, sample_ppp, serving_distance_quantile,
    socp_from_parents, uniform_in_disk, PointPattern, Tier, Window,
};
use crate::model::{db_to_linear, linear_to_db, SbsTier, UserClass};
use crate::rng::{substream, Purpose};
use crate::stats::{wilson, Z95};

pub const JSP_MC_HEADER: &str = "model,user,n,beta_db,estimate,ci_low,ci_high";

/// Per-slot SIR of the typical link and the success indicators against β.
#[derive(Debug, Clone, PartialEq)]
pub struct SirTrace {
    pub sir: Vec<f64>,
    pub success: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JspEstimate {
    pub model: &'static str,
    pub user: UserClass,
    pub n: u32,
    pub beta_db: f64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub successes: u64,
    pub trials: u64,
}

impl JspEstimate {
    /// Half-width of the 95% interval.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }

    pub fn write_row<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            self.model,
            self.user.name(),
            self.n,
            g9(self.beta_db),
            g9(self.estimate),
            g9(self.ci_low),
            g9(self.ci_high)
        )
    }
}

/// Signal and interferer path gains seen by the typical user at the origin.
struct Link {
    signal: f64,
    interferers: Vec<f64>,
    far: f64,
}

fn add_daughters<R: Rng + ?Sized>(
    pp: &mut Vec<[f64; 2]>,
    centre: [f64; 2],
    mean: f64,
    radius: f64,
    window: &Window,
    rng: &mut R,
) {
    for _ in 0..poisson(mean, rng) {
        let p = uniform_in_disk(centre, radius, rng);
        if window.contains(p) {
            pp.push(p);
        }
    }
}

fn draw_link(cfg: &SimConfig, window: &Window, trial: u64) -> Result<Link> {
    let model = &cfg.model;
    let radio = &model.radio;
    let (d_m, d_s) = association_radii(model)?;
    let d = match cfg.user {
        UserClass::Mu => d_m,
        UserClass::Su => d_s,
    };
    let mut urng = substream(cfg.seed, trial, Purpose::User);
    let mut prng = substream(cfg.seed, trial, Purpose::Pattern);
    let r = serving_distance_quantile(urng.random::<f64>(), d);
    let serving = [r, 0.0];

    let sbs_pp: PointPattern = sample_tier(&model.sbs, window, &mut prng)?;
    let shared = cfg.shared_parents && matches!(model.sbs, SbsTier::Socp(_));
    let mut mbs: Vec<[f64; 2]> = if shared {
        sbs_pp
            .parents
            .iter()
            .copied()
            .filter(|p| window.contains(*p))
            .collect()
    } else {
        sample_ppp(model.mbs_density, window, Tier::Mbs, &mut prng)?
            .positions()
            .collect()
    };
    let mut sbs: Vec<[f64; 2]> = sbs_pp.positions().collect();

    // the rest of the serving station's cluster
    match (cfg.user, &model.sbs) {
        (UserClass::Mu, SbsTier::Socp(s)) if shared => {
            sbs.extend(socp_from_parents(s, vec![serving], window, &mut prng).positions());
        }
        (UserClass::Su, SbsTier::Mcp(s)) => {
            let parent = uniform_in_disk(serving, s.radius, &mut prng);
            add_daughters(&mut sbs, parent, s.mean_points, s.radius, window, &mut prng);
        }
        (UserClass::Su, SbsTier::Socp(s)) => {
            let q = uniform_in_disk(serving, s.second_order_radius, &mut prng);
            add_daughters(
                &mut sbs,
                q,
                s.second_order_mean,
                s.second_order_radius,
                window,
                &mut prng,
            );
            let off = first_order_offset(s, &mut prng);
            let parent = [q[0] + off[0], q[1] + off[1]];
            sbs.extend(socp_from_parents(s, vec![parent], window, &mut prng).positions());
            if shared && window.contains(parent) {
                mbs.push(parent);
            }
        }
        _ => {}
    }

    let alpha = radio.alpha;
    let gain = |p: [f64; 2], power: f64| {
        let d2 = p[0] * p[0] + p[1] * p[1];
        power
            * if alpha == 4.0 {
                1.0 / (d2 * d2)
            } else {
                d2.powf(-0.5 * alpha)
            }
    };
    // own-tier stations closer than the serving one are excluded
    let r2 = r * r;
    let (own, other, p_own, p_other) = match cfg.user {
        UserClass::Mu => (mbs, sbs, radio.p_m, radio.p_s),
        UserClass::Su => (sbs, mbs, radio.p_s, radio.p_m),
    };
    let mut interferers: Vec<f64> = own
        .iter()
        .filter(|p| p[0] * p[0] + p[1] * p[1] >= r2)
        .map(|&p| gain(p, p_own))
        .collect();
    interferers.extend(other.iter().map(|&p| gain(p, p_other)));
    let far = cfg.far_field_mean(model.mbs_density, radio.p_m, window.radius, 0.0)
        + cfg.far_field_mean(model.sbs.density(), radio.p_s, window.radius, 0.0);
    Ok(Link {
        signal: gain(serving, p_own),
        interferers,
        far,
    })
}

fn slot_sirs(cfg: &SimConfig, link: &Link, trial: u64) -> Vec<f64> {
    let mut frng = substream(cfg.seed, trial, Purpose::Fading);
    (0..cfg.slots)
        .map(|_| {
            let h0: f64 = frng.sample(Exp1);
            let i: f64 = link
                .interferers
                .iter()
                .map(|g| g * frng.sample::<f64, _>(Exp1))
                .sum();
            link.signal * h0 / (i + link.far)
        })
        .collect()
}

/// Per-slot SIR trace of one trial at the configured user's threshold.
pub fn simulate_trace(cfg: &SimConfig, trial: u64) -> Result<SirTrace> {
    cfg.validate()?;
    let window = Window::centered(cfg.window()?)?;
    let link = draw_link(cfg, &window, trial)?;
    let sir = slot_sirs(cfg, &link, trial);
    let beta = cfg.model.threshold(cfg.user);
    let success = sir.iter().map(|s| *s > beta).collect();
    Ok(SirTrace { sir, success })
}

/// Joint success estimates for n = 1..=slots at each threshold in `betas_db`.
///
/// One network draw serves every threshold and every n, so estimates are
/// non-increasing in n and in β for any seed.
pub fn simulate_jsp_sweep(cfg: &SimConfig, betas_db: &[f64]) -> Result<Vec<JspEstimate>> {
    cfg.validate()?;
    let window = Window::centered(cfg.window()?)?;
    let mins: Vec<Result<Vec<f64>>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let link = draw_link(cfg, &window, i)?;
            let mut m = f64::INFINITY;
            Ok(slot_sirs(cfg, &link, i)
                .into_iter()
                .map(|s| {
                    m = m.min(s);
                    m
                })
                .collect())
        })
        .collect();
    let mins = mins.into_iter().collect::<Result<Vec<_>>>()?;
    let trials = cfg.trials as u64;
    let mut out = Vec::new();
    for &bdb in betas_db {
        let beta = db_to_linear(bdb);
        for k in 0..cfg.slots as usize {
            let successes = mins.iter().filter(|m| m[k] > beta).count() as u64;
            let (lo, hi) = wilson(successes, trials, Z95);
            out.push(JspEstimate {
                model: cfg.model.sbs.name(),
                user: cfg.user,
                n: k as u32 + 1,
                beta_db: bdb,
                estimate: successes as f64 / trials as f64,
                ci_low: lo,
                ci_high: hi,
                successes,
                trials,
            });
        }
    }
    Ok(out)
}

/// Joint success estimates at the model's threshold for the configured user.
pub fn simulate_jsp(cfg: &SimConfig) -> Result<Vec<JspEstimate>> {
    let beta_db = linear_to_db(cfg.model.threshold(cfg.user));
    simulate_jsp_sweep(cfg, &[beta_db])
}
