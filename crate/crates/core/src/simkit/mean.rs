//! Mean smoothed interference at random probe points.

use rayon::prelude::*;

use super::SimConfig;
use crate::correlation::{kernel_scale, sample_tier, smoothed_interference};
use crate::error::{domain, Result};
use crate::geometry::{uniform_in_disk, Window};
use crate::rng::{substream, Purpose};
use crate::stats::mean_se;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
    pub probes: usize,
}

/// Average of I_ε over `probes` uniform points per network draw of the
/// small-cell tier, with the standard error taken across draws.
///
/// Probes fall in the inner half of the window, which defaults to the larger
/// of the configured window and 200 ε^{1/α}.
pub fn estimate_mean_interference(cfg: &SimConfig, probes: usize) -> Result<MeanEstimate> {
    cfg.validate()?;
    if probes == 0 {
        return Err(domain("need at least one probe per trial"));
    }
    let radio = &cfg.model.radio;
    let w = match cfg.window_radius {
        Some(w) => w,
        None => cfg.window()?.max(200.0 * kernel_scale(radio)),
    };
    let window = Window::centered(w)?;
    let per_trial: Vec<Result<f64>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut prng = substream(cfg.seed, i, Purpose::Pattern);
            let mut qrng = substream(cfg.seed, i, Purpose::Probe);
            let mut frng = substream(cfg.seed, i, Purpose::Fading);
            let pp = sample_tier(&cfg.model.sbs, &window, &mut prng)?;
            let mut sum = 0.0;
            for _ in 0..probes {
                let at = uniform_in_disk([0.0, 0.0], 0.5 * w, &mut qrng);
                sum += smoothed_interference(&pp, at, radio, &mut frng);
            }
            Ok(sum / probes as f64)
        })
        .collect();
    let values = per_trial.into_iter().collect::<Result<Vec<f64>>>()?;
    let (mean, stderr) = mean_se(&values);
    Ok(MeanEstimate {
        mean,
        stderr,
        trials: cfg.trials,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::mean_interference;
    use crate::geometry::MatClusterSpec;
    use crate::model::{HcnModel, RadioParams, SbsTier, UserClass};

    fn cfg(sbs: SbsTier) -> SimConfig {
        let radio = RadioParams::new(4.0, 0.01).unwrap();
        SimConfig::new(HcnModel::new(0.01, sbs, radio).unwrap(), UserClass::Mu).with_trials(400)
    }

    #[test]
    fn empty_clusters_give_zero() {
        let spec = MatClusterSpec::new(0.1, 0.0, 5.0).unwrap();
        let mut c = cfg(SbsTier::Mcp(spec));
        c.model = c.model.with_radii(5.0, 5.0);
        let e = estimate_mean_interference(&c, 2).unwrap();
        assert_eq!(e.mean, 0.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn ppp_mean_matches_closed_form() {
        let c = cfg(SbsTier::Ppp { density: 0.3 });
        let e = estimate_mean_interference(&c, 16).unwrap();
        let want = mean_interference(0.3, &c.model.radio);
        assert!((e.mean - want).abs() < 4.0 * e.stderr, "{e:?} {want}");
    }

    #[test]
    fn stderr_shrinks_with_trials() {
        let c = cfg(SbsTier::Ppp { density: 0.3 });
        let a = estimate_mean_interference(&c, 4).unwrap();
        let b = estimate_mean_interference(&c.with_trials(1600), 4).unwrap();
        let ratio = a.stderr / b.stderr;
        assert!(ratio > 1.4 && ratio < 2.8, "{ratio}");
    }
}
