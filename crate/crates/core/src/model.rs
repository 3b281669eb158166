//! Radio parameters and the two-tier network description.

use crate::error::{Error, Result};
use crate::geometry::{MatClusterSpec, SocpSpec};

/// Converts a power in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Converts a ratio in dB to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Path loss, fading moments, transmit powers and SIR thresholds.
///
/// Powers are in watts and thresholds are linear ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    pub alpha: f64,
    pub eps: f64,
    pub fading_mean: f64,
    pub fading_second_moment: f64,
    pub p_m: f64,
    pub p_s: f64,
    pub beta_m: f64,
    pub beta_s: f64,
}

impl RadioParams {
    /// Unit-mean Rayleigh fading, equal unit powers and unit thresholds.
    pub fn new(alpha: f64, eps: f64) -> Result<Self> {
        let p = Self {
            alpha,
            eps,
            fading_mean: 1.0,
            fading_second_moment: 2.0,
            p_m: 1.0,
            p_s: 1.0,
            beta_m: 1.0,
            beta_s: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_powers_dbm(mut self, p_m_dbm: f64, p_s_dbm: f64) -> Self {
        self.p_m = dbm_to_watts(p_m_dbm);
        self.p_s = dbm_to_watts(p_s_dbm);
        self
    }

    pub fn with_thresholds_db(mut self, beta_m_db: f64, beta_s_db: f64) -> Self {
        self.beta_m = db_to_linear(beta_m_db);
        self.beta_s = db_to_linear(beta_s_db);
        self
    }

    pub fn with_thresholds(mut self, beta_m: f64, beta_s: f64) -> Self {
        self.beta_m = beta_m;
        self.beta_s = beta_s;
        self
    }

    pub fn with_fading_moments(mut self, mean: f64, second: f64) -> Self {
        self.fading_mean = mean;
        self.fading_second_moment = second;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// δ = 2/α.
    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.alpha > 2.0 && self.alpha.is_finite()) {
            return bad("path-loss exponent must exceed 2");
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad("smoothing eps must be positive");
        }
        if !(self.fading_mean > 0.0)
            || !(self.fading_second_moment >= self.fading_mean * self.fading_mean)
        {
            return bad("fading moments need E[h] > 0 and E[h^2] >= E[h]^2");
        }
        if !(self.p_m > 0.0 && self.p_s > 0.0) {
            return bad("transmit powers must be positive");
        }
        if !(self.beta_m > 0.0 && self.beta_s > 0.0) {
            return bad("SIR thresholds must be positive");
        }
        Ok(())
    }
}

/// Small-cell tier variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SbsTier {
    Ppp { density: f64 },
    Mcp(MatClusterSpec),
    Socp(SocpSpec),
}

impl SbsTier {
    pub fn density(&self) -> f64 {
        match self {
            SbsTier::Ppp { density } => *density,
            SbsTier::Mcp(s) => s.density(),
            SbsTier::Socp(s) => s.density(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SbsTier::Ppp { .. } => "PPP",
            SbsTier::Mcp(_) => "MCP",
            SbsTier::Socp(_) => "SOCP",
        }
    }

    /// Largest distance between a daughter and its top-level parent.
    pub fn cluster_reach(&self) -> f64 {
        match self {
            SbsTier::Ppp { .. } => 0.0,
            SbsTier::Mcp(s) => s.radius,
            SbsTier::Socp(s) => s.first_order_radius + s.second_order_radius,
        }
    }
}

/// Which tier serves the typical user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UserClass {
    /// Macro-cell user, served by an MBS.
    Mu,
    /// Small-cell user, served by an SBS.
    Su,
}

impl UserClass {
    pub fn name(&self) -> &'static str {
        match self {
            UserClass::Mu => "MU",
            UserClass::Su => "SU",
        }
    }
}

/// MBS tier (PPP) plus one small-cell tier and the radio parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcnModel {
    pub mbs_density: f64,
    pub sbs: SbsTier,
    pub radio: RadioParams,
    /// Overrides the association radii (D_m, D_s) when set.
    pub radii: Option<(f64, f64)>,
}

impl HcnModel {
    pub fn new(mbs_density: f64, sbs: SbsTier, radio: RadioParams) -> Result<Self> {
        let m = Self {
            mbs_density,
            sbs,
            radio,
            radii: None,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_radii(mut self, d_m: f64, d_s: f64) -> Self {
        self.radii = Some((d_m, d_s));
        self
    }

    pub fn with_radio(mut self, radio: RadioParams) -> Self {
        self.radio = radio;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.radio.validate()?;
        if !(self.mbs_density > 0.0 && self.mbs_density.is_finite()) {
            return Err(Error::Config("MBS density must be positive".into()));
        }
        match &self.sbs {
            SbsTier::Ppp { density } if !(*density > 0.0) => {
                return Err(Error::Config("SBS density must be positive".into()));
            }
            SbsTier::Mcp(s) => s.validate()?,
            SbsTier::Socp(s) => {
                s.validate()?;
                if ((s.parent_density - self.mbs_density) / self.mbs_density).abs() > 1e-9 {
                    return Err(Error::Config(
                        "SOCP parents are the MBSs: parent density must equal the MBS density"
                            .into(),
                    ));
                }
            }
            _ => {}
        }
        if let Some((a, b)) = self.radii {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::Config("association radii must be positive".into()));
            }
        }
        Ok(())
    }

    /// Interferer density, transmit power and threshold of each tier from
    /// the point of view of `user`: (own tier, other tier).
    pub fn tier_powers(&self, user: UserClass) -> (f64, f64) {
        match user {
            UserClass::Mu => (self.radio.p_m, self.radio.p_s),
            UserClass::Su => (self.radio.p_s, self.radio.p_m),
        }
    }

    pub fn threshold(&self, user: UserClass) -> f64 {
        match user {
            UserClass::Mu => self.radio.beta_m,
            UserClass::Su => self.radio.beta_s,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_conversions() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-15);
        assert!((dbm_to_watts(39.0) - 7.943_282_347_242_815).abs() < 1e-12);
        assert!((db_to_linear(-3.0) - 0.501_187_233_627_272_2).abs() < 1e-15);
        assert!((linear_to_db(db_to_linear(-2.0)) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_radio() {
        assert!(RadioParams::new(2.0, 0.01).is_err());
        assert!(RadioParams::new(4.0, 0.0).is_err());
        let r = RadioParams::new(4.0, 0.01)
            .unwrap()
            .with_fading_moments(1.0, 0.5);
        assert!(r.validate().is_err());
    }

    #[test]
    fn socp_parents_must_match_mbs_density() {
        let radio = RadioParams::new(4.0, 0.01).unwrap();
        let s = SocpSpec::new(1e-4, 10.0, 90.0, 50.0, 3.0, 10.0).unwrap();
        assert!(HcnModel::new(1e-4, SbsTier::Socp(s), radio).is_ok());
        assert!(HcnModel::new(2e-4, SbsTier::Socp(s), radio).is_err());
    }
}
