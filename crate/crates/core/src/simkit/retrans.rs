//! Multi-slot simulation of the small-cell retransmission schemes.

use std::io::Write;

use rand::{Rng, RngCore};
use rayon::prelude::*;

use super::{SchemeDescriptor, SimConfig};
use crate::correlation::sample_tier;
use crate::csvfmt::g9;
use crate::error::{Error, Result};
use crate::geometry::{association_radii, sample_ppp, uniform_in_disk, Tier, Window};
use crate::model::{linear_to_db, SbsTier};
use crate::rng::{substream, Purpose};
use crate::stats::{ratio_se, Z95};

pub const RETRANS_HEADER: &str = "scheme,c,beta_db,success_prob,ci_low,ci_high,trials,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct RetransEstimate {
    pub scheme: String,
    pub c: f64,
    pub beta_db: f64,
    pub success_prob: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: usize,
    pub seed: u64,
    pub successes: u64,
    pub attempts: u64,
}

impl RetransEstimate {
    pub fn write_row<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            self.scheme,
            g9(self.c),
            g9(self.beta_db),
            g9(self.success_prob),
            g9(self.ci_low),
            g9(self.ci_high),
            self.trials,
            self.seed
        )
    }
}

/// Unit-mean exponential variate from one 64-bit word, so that every link
/// has a fixed position in the fading stream.
fn exp_word(rng: &mut impl RngCore) -> f64 {
    let u = ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
    -u.ln()
}

struct Network {
    /// Per small cell: path gain to its own user.
    signal: Vec<f64>,
    /// Row i: path gains from every small cell to user i (diagonal unused).
    cross: Vec<Vec<f64>>,
    /// Row i: path gains from every MBS to user i.
    macro_gain: Vec<Vec<f64>>,
    /// Per user: mean interference from outside the window, MBS and SBS tiers.
    far: Vec<(f64, f64)>,
    cluster: Vec<usize>,
    clusters: usize,
    inner: Vec<bool>,
}

fn draw_network(cfg: &SimConfig, window: &Window, trial: u64) -> Result<Network> {
    let model = &cfg.model;
    let radio = &model.radio;
    let (_, d_s) = association_radii(model)?;
    let mut prng = substream(cfg.seed, trial, Purpose::Pattern);
    let mut urng = substream(cfg.seed, trial, Purpose::User);
    let sbs = sample_tier(&model.sbs, window, &mut prng)?;
    let mbs: Vec<[f64; 2]> = if cfg.shared_parents && matches!(model.sbs, SbsTier::Socp(_)) {
        sbs.parents
            .iter()
            .copied()
            .filter(|p| window.contains(*p))
            .collect()
    } else {
        sample_ppp(model.mbs_density, window, Tier::Mbs, &mut prng)?
            .positions()
            .collect()
    };
    let pos: Vec<[f64; 2]> = sbs.positions().collect();
    let users: Vec<[f64; 2]> = pos
        .iter()
        .map(|&p| uniform_in_disk(p, d_s, &mut urng))
        .collect();
    let alpha = radio.alpha;
    let gain = |a: [f64; 2], b: [f64; 2], power: f64| {
        let d2 = (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
        power
            * if alpha == 4.0 {
                1.0 / (d2 * d2)
            } else {
                d2.powf(-0.5 * alpha)
            }
    };
    let signal = pos
        .iter()
        .zip(&users)
        .map(|(&p, &u)| gain(p, u, radio.p_s))
        .collect();
    let cross = users
        .iter()
        .map(|&u| pos.iter().map(|&p| gain(p, u, radio.p_s)).collect())
        .collect();
    let macro_gain = users
        .iter()
        .map(|&u| mbs.iter().map(|&m| gain(m, u, radio.p_m)).collect())
        .collect();
    // SOCP members share a first-order point; MCP members share a parent
    let mut ids: Vec<u32> = sbs
        .sites
        .iter()
        .map(|s| match model.sbs {
            SbsTier::Socp(_) => s.first_order.unwrap_or(0),
            _ => s.parent.unwrap_or(0),
        })
        .collect();
    let mut uniq = ids.clone();
    uniq.sort_unstable();
    uniq.dedup();
    for id in ids.iter_mut() {
        *id = uniq.binary_search(id).unwrap_or(0) as u32;
    }
    let far = users
        .iter()
        .map(|u| {
            let d = u[0].hypot(u[1]);
            (
                cfg.far_field_mean(model.mbs_density, radio.p_m, window.radius, d),
                cfg.far_field_mean(model.sbs.density(), radio.p_s, window.radius, d),
            )
        })
        .collect();
    let half = 0.5 * window.radius;
    let inner = pos.iter().map(|p| p[0].hypot(p[1]) <= half).collect();
    Ok(Network {
        signal,
        cross,
        macro_gain,
        far,
        cluster: ids.into_iter().map(|i| i as usize).collect(),
        clusters: uniq.len(),
        inner,
    })
}

/// Schedules the next slot from this slot's transmissions and outcomes.
struct Scheduler {
    silence: Vec<u32>,
}

impl Scheduler {
    fn next_active(
        &mut self,
        scheme: &SchemeDescriptor,
        net: &Network,
        tx: &[bool],
        ok: &[bool],
        rng: &mut impl Rng,
    ) -> Vec<bool> {
        let n = tx.len();
        match *scheme {
            SchemeDescriptor::Simple => vec![true; n],
            SchemeDescriptor::RandomP { p } => (0..n).map(|_| rng.random::<f64>() < p).collect(),
            SchemeDescriptor::CorrelationAware {
                tau,
                backoff,
                q,
                count_silent,
            } => {
                let mut sent = vec![0usize; net.clusters];
                let mut good = vec![0usize; net.clusters];
                let mut size = vec![0usize; net.clusters];
                for i in 0..n {
                    let c = net.cluster[i];
                    size[c] += 1;
                    sent[c] += tx[i] as usize;
                    good[c] += ok[i] as usize;
                }
                for i in 0..n {
                    let c = net.cluster[i];
                    let denom = if count_silent { size[c] } else { sent[c] };
                    let s = &mut self.silence[i];
                    if sent[c] == 0 {
                        // nobody transmitted: backoffs keep running
                        *s = s.saturating_sub(1);
                    } else if good[c] == 0 {
                        *s = if rng.random::<f64>() < q { 0 } else { 1 };
                    } else if good[c] as f64 >= tau * denom as f64 || ok[i] {
                        *s = 0;
                    } else if tx[i] {
                        *s = rng.random_range(1..=backoff);
                    } else {
                        *s = s.saturating_sub(1);
                    }
                }
                // nodes whose silence has just expired transmit again
                self.silence.iter_mut().map(|s| *s == 0).collect()
            }
        }
    }
}

fn run_trial(cfg: &SimConfig, window: &Window, trial: u64) -> Result<(f64, f64)> {
    let net = draw_network(cfg, window, trial)?;
    let n = net.signal.len();
    let beta = cfg.model.radio.beta_s;
    let mut frng = substream(cfg.seed, trial, Purpose::Fading);
    let mut srng = substream(cfg.seed, trial, Purpose::Scheme);
    let m = net.macro_gain.first().map_or(0, |r| r.len());
    let block = (n + m + 1) as u128;
    let warmup = cfg.slots / 5;
    let mut sched = Scheduler {
        silence: vec![0; n],
    };
    let mut active = match cfg.scheme {
        SchemeDescriptor::RandomP { p } => (0..n).map(|_| srng.random::<f64>() < p).collect(),
        _ => vec![true; n],
    };
    let (mut succ, mut att) = (0u64, 0u64);
    let mut ok = vec![false; n];
    for t in 0..cfg.slots as u128 {
        let duty = active.iter().filter(|a| **a).count() as f64 / n.max(1) as f64;
        for i in 0..n {
            ok[i] = false;
            if !active[i] {
                continue;
            }
            frng.set_word_pos(2 * block * (t * n as u128 + i as u128));
            let h0 = exp_word(&mut frng);
            let mut interference = net.far[i].0 + duty * net.far[i].1;
            for (j, g) in net.cross[i].iter().enumerate() {
                let h = exp_word(&mut frng);
                if j != i && active[j] {
                    interference += g * h;
                }
            }
            for g in &net.macro_gain[i] {
                interference += g * exp_word(&mut frng);
            }
            ok[i] = net.signal[i] * h0 > beta * interference;
            if t >= warmup as u128 && net.inner[i] {
                att += 1;
                succ += ok[i] as u64;
            }
        }
        active = sched.next_active(&cfg.scheme, &net, &active, &ok, &mut srng);
    }
    Ok((succ as f64, att as f64))
}

/// Success-per-attempt ratio of the configured scheme over the slots after a
/// warm-up of T/5, counting only cells in the inner half of the window.
pub fn simulate_retransmission(cfg: &SimConfig) -> Result<RetransEstimate> {
    cfg.validate()?;
    let c = match cfg.model.sbs {
        SbsTier::Mcp(s) => s.mean_points,
        SbsTier::Socp(s) => s.second_order_mean,
        SbsTier::Ppp { .. } => {
            return Err(Error::Config(
                "retransmission schemes need a clustered small-cell tier".into(),
            ));
        }
    };
    let window = Window::centered(cfg.window()?)?;
    let rows: Vec<Result<(f64, f64)>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| run_trial(cfg, &window, i))
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let num: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let den: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let (p, se) = ratio_se(&num, &den)?;
    Ok(RetransEstimate {
        scheme: cfg.scheme.name(),
        c,
        beta_db: linear_to_db(cfg.model.radio.beta_s),
        success_prob: p,
        ci_low: (p - Z95 * se).max(0.0),
        ci_high: (p + Z95 * se).min(1.0),
        trials: cfg.trials,
        seed: cfg.seed,
        successes: num.iter().sum::<f64>() as u64,
        attempts: den.iter().sum::<f64>() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::MatClusterSpec;
    use crate::model::{HcnModel, RadioParams, UserClass};

    fn cfg(c: f64, beta_db: f64) -> SimConfig {
        let radio = RadioParams::new(4.0, 0.01)
            .unwrap()
            .with_powers_dbm(39.0, 13.0)
            .with_thresholds_db(-2.0, beta_db);
        let spec = MatClusterSpec::new(1.2e-4 / c, c, 10.0).unwrap();
        let m = HcnModel::new(7.96e-6, SbsTier::Mcp(spec), radio).unwrap();
        SimConfig::new(m, UserClass::Su)
            .with_trials(100)
            .with_slots(20)
            .with_window(500.0)
    }

    #[test]
    fn exp_word_mean() {
        let mut rng = substream(1, 0, Purpose::Fading);
        let m: f64 = (0..100_000).map(|_| exp_word(&mut rng)).sum::<f64>() / 1e5;
        assert!((m - 1.0).abs() < 0.015, "{m}");
    }

    #[test]
    fn random_p_one_is_simple() {
        let base = cfg(4.0, -3.0);
        let a = simulate_retransmission(&base).unwrap();
        let b = simulate_retransmission(&base.with_scheme(SchemeDescriptor::RandomP { p: 1.0 }))
            .unwrap();
        assert_eq!((a.successes, a.attempts), (b.successes, b.attempts));
        assert_eq!(a.success_prob.to_bits(), b.success_prob.to_bits());
    }

    #[test]
    fn tiny_threshold_always_succeeds() {
        let base = cfg(2.0, -200.0);
        for s in [
            SchemeDescriptor::Simple,
            SchemeDescriptor::RandomP { p: 0.5 },
            SchemeDescriptor::correlation_aware(),
        ] {
            let e = simulate_retransmission(&base.with_scheme(s)).unwrap();
            assert_eq!(e.success_prob, 1.0);
        }
    }

    #[test]
    fn needs_clusters() {
        let radio = RadioParams::new(4.0, 0.01).unwrap();
        let m = HcnModel::new(7.96e-6, SbsTier::Ppp { density: 1.2e-4 }, radio).unwrap();
        let c = SimConfig::new(m, UserClass::Su).with_trials(100);
        assert!(matches!(simulate_retransmission(&c), Err(Error::Config(_))));
    }
}
