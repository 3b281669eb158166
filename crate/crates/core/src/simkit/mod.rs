//! Slot-based Monte Carlo simulation of the two-tier network.

mod link;
mod mean;
mod retrans;

pub use link::{
    simulate_jsp, simulate_jsp_sweep, simulate_trace, JspEstimate, SirTrace, JSP_MC_HEADER,
};
pub use mean::{estimate_mean_interference, MeanEstimate};
pub use retrans::{simulate_retransmission, RetransEstimate, RETRANS_HEADER};

use crate::error::{Error, Result};
use crate::geometry::association_radii;
use crate::model::{HcnModel, UserClass};

pub const MIN_TRIALS: usize = 100;

/// Transmission policy of the small cells in the retransmission study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeDescriptor {
    /// Every node transmits in every slot.
    Simple,
    /// Every node transmits independently with probability `p` in each slot.
    RandomP { p: f64 },
    /// Cluster-level rule driven by the fraction of successful members.
    CorrelationAware {
        tau: f64,
        /// Failed nodes back off for a uniform number of slots in 1..=backoff.
        backoff: u32,
        /// Transmit probability of each member after a slot in which every
        /// transmitting member failed.
        q: f64,
        /// Count silent members in the denominator of the success fraction.
        count_silent: bool,
    },
}

impl SchemeDescriptor {
    pub fn correlation_aware() -> Self {
        SchemeDescriptor::CorrelationAware {
            tau: 0.5,
            backoff: 3,
            q: 0.5,
            count_silent: false,
        }
    }

    pub fn name(&self) -> String {
        match self {
            SchemeDescriptor::Simple => "simple".into(),
            SchemeDescriptor::RandomP { p } => format!("random_p{p}"),
            SchemeDescriptor::CorrelationAware { .. } => "correlation_aware".into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SchemeDescriptor::Simple => Ok(()),
            SchemeDescriptor::RandomP { p } if p > 0.0 && p <= 1.0 => Ok(()),
            SchemeDescriptor::RandomP { .. } => Err(Error::Config(
                "transmit probability must lie in (0, 1]".into(),
            )),
            SchemeDescriptor::CorrelationAware {
                tau, backoff, q, ..
            } => {
                if !(0.0..=1.0).contains(&tau) || !(0.0..=1.0).contains(&q) {
                    return Err(Error::Config("tau and q must lie in [0, 1]".into()));
                }
                if backoff < 1 {
                    return Err(Error::Config(
                        "maximum backoff must be at least one slot".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub model: HcnModel,
    /// Defaults to max(10 D_m, 5 × cluster reach).
    pub window_radius: Option<f64>,
    /// Slots per joint-success trial, or the horizon T of a retransmission run.
    pub slots: u32,
    pub trials: usize,
    pub seed: u64,
    pub user: UserClass,
    pub scheme: SchemeDescriptor,
    /// In the second-order cluster model, use the cluster parents as the MBSs
    /// instead of an independent PPP of the same density.
    pub shared_parents: bool,
    /// Replace the interference from beyond the window by its mean.
    pub far_field: bool,
}

impl SimConfig {
    pub fn new(model: HcnModel, user: UserClass) -> Self {
        Self {
            model,
            window_radius: None,
            slots: 4,
            trials: 10_000,
            seed: 1,
            user,
            scheme: SchemeDescriptor::Simple,
            shared_parents: false,
            far_field: true,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_slots(mut self, slots: u32) -> Self {
        self.slots = slots;
        self
    }

    pub fn with_window(mut self, radius: f64) -> Self {
        self.window_radius = Some(radius);
        self
    }

    pub fn with_scheme(mut self, scheme: SchemeDescriptor) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_shared_parents(mut self, shared: bool) -> Self {
        self.shared_parents = shared;
        self
    }

    pub fn with_far_field(mut self, on: bool) -> Self {
        self.far_field = on;
        self
    }

    /// Mean interference power at distance `d` from the window centre from
    /// stations of one tier (density `lambda`, power `power`) outside the
    /// window of radius `w`.
    ///
    /// Expands the angular average (ρ² + d² − 2ρd cos θ)^{−α/2} in (d/ρ)²,
    /// giving 2π W^{2−α} Σ_k ((α/2)_k/k!)² (d/W)^{2k}/(α + 2k − 2).
    pub fn far_field_mean(&self, lambda: f64, power: f64, w: f64, d: f64) -> f64 {
        if !self.far_field || lambda == 0.0 {
            return 0.0;
        }
        let a = self.model.radio.alpha;
        let x = (d / w).min(0.9).powi(2);
        let s = 0.5 * a;
        let (mut coef, mut xk, mut sum) = (1.0, 1.0, 0.0);
        for k in 0..400 {
            let term = coef * coef * xk / (a + 2.0 * k as f64 - 2.0);
            sum += term;
            if term < 1e-16 * sum {
                break;
            }
            coef *= (s + k as f64) / (k as f64 + 1.0);
            xk *= x;
        }
        lambda * power * 2.0 * std::f64::consts::PI * w.powf(2.0 - a) * sum
    }

    /// Simulation window radius after checking it against D_m and the cluster reach.
    pub fn window(&self) -> Result<f64> {
        let (d_m, _) = association_radii(&self.model)?;
        let reach = self.model.sbs.cluster_reach();
        let w = self.window_radius.unwrap_or((10.0 * d_m).max(5.0 * reach));
        if w < 5.0 * d_m || w < 5.0 * reach {
            return Err(Error::Config(format!(
                "window radius {w} must be at least 5 D_m ({}) and 5 × cluster reach ({})",
                5.0 * d_m,
                5.0 * reach
            )));
        }
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.scheme.validate()?;
        if self.trials < MIN_TRIALS {
            return Err(Error::Config(format!("need at least {MIN_TRIALS} trials")));
        }
        if self.slots < 1 {
            return Err(Error::Config("need at least one slot".into()));
        }
        self.window().map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::MatClusterSpec;
    use crate::model::{RadioParams, SbsTier};

    #[test]
    fn config_checks() {
        let radio = RadioParams::new(4.0, 0.01).unwrap();
        let spec = MatClusterSpec::new(4e-5, 3.0, 10.0).unwrap();
        let m = HcnModel::new(7.96e-6, SbsTier::Mcp(spec), radio).unwrap();
        let c = SimConfig::new(m, UserClass::Mu);
        assert!(c.validate().is_ok());
        assert!(c.with_trials(10).validate().is_err());
        assert!(c.with_window(100.0).validate().is_err());
        assert!(c
            .with_scheme(SchemeDescriptor::RandomP { p: 0.0 })
            .validate()
            .is_err());
        assert!(c
            .with_scheme(SchemeDescriptor::correlation_aware())
            .validate()
            .is_ok());
    }
}
