//! Run configuration: a flat JSON object whose keys follow the usual
//! notation (lambda_m, c_M, R_S1, ...), overlaid on per-command presets.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use hcncorr::geometry::{MatClusterSpec, SocpSpec};
use hcncorr::jsp::{PgflMethod, PgflOptions};
use hcncorr::presets;
use hcncorr::simkit::SchemeDescriptor;
use hcncorr::{HcnModel, RadioParams, SbsTier, UserClass};

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// MBS density.
    pub lambda_m: f64,
    /// SBS density of the PPP baseline.
    pub lambda_p: f64,
    pub lambda_M0: f64,
    pub c_M: f64,
    pub R_M: f64,
    pub lambda_S0: f64,
    pub c_S1: f64,
    pub R_S1: f64,
    pub sigma: f64,
    pub c_S: f64,
    pub R_S: f64,
    pub alpha: f64,
    pub eps: f64,
    pub fading_second_moment: f64,
    pub P_m_dbm: f64,
    pub P_s_dbm: f64,
    pub beta_m_db: f64,
    pub beta_s_db: f64,

    pub seed: u64,
    pub trials: usize,
    /// Slots per joint-success trial, or the retransmission horizon.
    pub slots: u32,
    /// Simulation window radius; 0 picks the default.
    pub window: f64,
    pub far_field: bool,
    pub shared_parents: bool,
    pub exact_d: bool,
    /// "nested" or "qmc".
    pub pgfl_method: String,

    pub models: Vec<String>,
    pub users: Vec<String>,
    pub c_grid: Vec<f64>,
    pub R_grid: Vec<f64>,
    pub u_grid: Vec<f64>,
    pub beta_grid_db: Vec<f64>,
    pub zeta_mc: bool,

    pub p_random: f64,
    pub tau: f64,
    pub backoff: u32,
    pub q: f64,
    pub count_silent: bool,
}

impl Default for Config {
    fn default() -> Self {
        let socp = presets::socp_spec().expect("valid preset");
        Self {
            lambda_m: presets::LAMBDA_M,
            lambda_p: presets::LAMBDA_P,
            lambda_M0: presets::LAMBDA_P / 3.0,
            c_M: 3.0,
            R_M: 10.0,
            lambda_S0: socp.parent_density,
            c_S1: socp.first_order_mean,
            R_S1: socp.first_order_radius,
            sigma: socp.sigma,
            c_S: socp.second_order_mean,
            R_S: socp.second_order_radius,
            alpha: 4.0,
            eps: 0.01,
            fading_second_moment: 2.0,
            P_m_dbm: 39.0,
            P_s_dbm: 13.0,
            beta_m_db: 0.0,
            beta_s_db: 0.0,
            seed: 1,
            trials: 20_000,
            slots: 4,
            window: 0.0,
            far_field: true,
            shared_parents: false,
            exact_d: true,
            pgfl_method: "nested".into(),
            models: vec!["PPP".into(), "MCP".into(), "SOCP".into()],
            users: vec!["MU".into(), "SU".into()],
            c_grid: vec![1.0, 3.0, 5.0],
            R_grid: vec![5.0],
            u_grid: (0..=20).map(|k| 0.5 * k as f64).collect(),
            beta_grid_db: (-10..=5).map(f64::from).collect(),
            zeta_mc: true,
            p_random: 0.5,
            tau: 0.5,
            backoff: 3,
            q: 0.5,
            count_silent: false,
        }
    }
}

/// Preset for one subcommand, before the file and `--set` overrides.
pub fn preset(command: &str) -> Config {
    let base = Config::default();
    match command {
        "zeta-sweep" => Config {
            lambda_M0: 0.1,
            R_M: 5.0,
            trials: 10_000,
            ..base
        },
        "f-table" => Config {
            c_grid: vec![1.0, 3.0, 5.0],
            R_grid: vec![2.0, 5.0, 10.0, 20.0, 50.0, 100.0],
            ..base
        },
        "retrans" => Config {
            c_grid: vec![2.0, 4.0, 6.0],
            beta_m_db: -2.0,
            beta_s_db: -3.0,
            trials: 400,
            slots: 50,
            ..base
        },
        "sample" => Config {
            lambda_m: 1e-4,
            lambda_M0: 1e-3,
            c_M: 3.0,
            R_M: 10.0,
            lambda_S0: 1e-4,
            c_S1: 10.0,
            models: vec!["MCP".into()],
            window: 1000.0,
            ..base
        },
        _ => base,
    }
}

/// Applies the JSON object in `text` to `base`, rejecting unknown keys.
pub fn overlay_json(base: &Config, text: &str) -> Result<Config> {
    let v: Value = serde_json::from_str(text).context("config is not valid JSON")?;
    let Value::Object(obj) = v else {
        bail!("config must be a JSON object");
    };
    merge(base, obj)
}

/// Applies `key=value` overrides; values are parsed as JSON, falling back to
/// a plain string.
pub fn overlay_sets(base: &Config, sets: &[String]) -> Result<Config> {
    let mut obj = Map::new();
    for s in sets {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| anyhow!("--set expects key=value, got {s:?}"))?;
        let val = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        obj.insert(k.trim().to_string(), val);
    }
    merge(base, obj)
}

fn merge(base: &Config, obj: Map<String, Value>) -> Result<Config> {
    let Value::Object(mut full) = serde_json::to_value(base)? else {
        unreachable!("config serializes to an object");
    };
    for (k, v) in obj {
        if !full.contains_key(&k) {
            bail!("unknown config key `{k}`");
        }
        full.insert(k, v);
    }
    let de = Value::Object(full);
    serde_path_to_error::deserialize(de)
        .map_err(|e| anyhow!("bad config value at `{}`: {}", e.path(), e.inner()))
}

impl Config {
    pub fn radio(&self) -> Result<RadioParams> {
        let r = RadioParams::new(self.alpha, self.eps)?
            .with_fading_moments(1.0, self.fading_second_moment)
            .with_powers_dbm(self.P_m_dbm, self.P_s_dbm)
            .with_thresholds_db(self.beta_m_db, self.beta_s_db);
        r.validate()?;
        Ok(r)
    }

    pub fn mcp(&self) -> Result<MatClusterSpec> {
        Ok(MatClusterSpec::new(self.lambda_M0, self.c_M, self.R_M)?)
    }

    pub fn socp(&self) -> Result<SocpSpec> {
        Ok(SocpSpec::new(
            self.lambda_S0,
            self.c_S1,
            self.R_S1,
            self.sigma,
            self.c_S,
            self.R_S,
        )?)
    }

    pub fn tier(&self, name: &str) -> Result<SbsTier> {
        Ok(match name {
            "PPP" => SbsTier::Ppp {
                density: self.lambda_p,
            },
            "MCP" => SbsTier::Mcp(self.mcp()?),
            "SOCP" => SbsTier::Socp(self.socp()?),
            _ => bail!("unknown model `{name}` (expected PPP, MCP or SOCP)"),
        })
    }

    pub fn model(&self, name: &str) -> Result<HcnModel> {
        Ok(HcnModel::new(
            self.lambda_m,
            self.tier(name)?,
            self.radio()?,
        )?)
    }

    pub fn user_classes(&self) -> Result<Vec<UserClass>> {
        self.users
            .iter()
            .map(|u| match u.as_str() {
                "MU" => Ok(UserClass::Mu),
                "SU" => Ok(UserClass::Su),
                _ => Err(anyhow!("unknown user class `{u}` (expected MU or SU)")),
            })
            .collect()
    }

    pub fn pgfl(&self) -> Result<PgflOptions> {
        let method = match self.pgfl_method.as_str() {
            "nested" => PgflMethod::Nested,
            "qmc" => PgflMethod::QuasiRandom,
            m => bail!("unknown pgfl_method `{m}` (expected nested or qmc)"),
        };
        Ok(PgflOptions {
            method,
            ..Default::default()
        })
    }

    pub fn window_radius(&self) -> Option<f64> {
        (self.window > 0.0).then_some(self.window)
    }

    pub fn correlation_aware(&self) -> SchemeDescriptor {
        SchemeDescriptor::CorrelationAware {
            tau: self.tau,
            backoff: self.backoff,
            q: self.q,
            count_silent: self.count_silent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_key_is_an_error() {
        let e = overlay_json(&Config::default(), r#"{"lambda_x": 1}"#).unwrap_err();
        assert!(e.to_string().contains("lambda_x"), "{e}");
    }

    #[test]
    fn bad_value_names_the_key() {
        let e = overlay_json(&Config::default(), r#"{"c_M": "three"}"#).unwrap_err();
        assert!(e.to_string().contains("c_M"), "{e}");
    }

    #[test]
    fn sets_override_file() {
        let c = overlay_json(&Config::default(), r#"{"c_M": 5, "R_M": 7}"#).unwrap();
        let c = overlay_sets(&c, &["c_M=2".into(), "pgfl_method=qmc".into()]).unwrap();
        assert_eq!((c.c_M, c.R_M), (2.0, 7.0));
        assert_eq!(c.pgfl_method, "qmc");
        assert!(overlay_sets(&c, &["c_M".into()]).is_err());
    }

    #[test]
    fn round_trip() {
        let c = preset("retrans");
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(overlay_json(&Config::default(), &text).unwrap(), c);
    }

    #[test]
    fn presets_build_models() {
        let c = Config::default();
        for m in ["PPP", "MCP", "SOCP"] {
            c.model(m).unwrap();
        }
        assert!(c.model("XYZ").is_err());
        let radio = c.radio().unwrap();
        assert!((radio.p_m - 7.943).abs() < 1e-3);
    }
}
