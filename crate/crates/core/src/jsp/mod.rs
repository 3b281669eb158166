//! Joint success probabilities of n successive transmissions, their PPP
//! closed forms and the density-substitution bounds for clustered tiers.

mod closed;
mod pgfl;
mod profile;

use std::f64::consts::PI;
use std::io::Write;

pub use closed::{gamma_const, ppp_average, ppp_rate, q_n, u_n};
pub use pgfl::{log_pgfl, pgfl, profile_integral, PgflMethod, PgflOptions};
pub use profile::{Profile, SirProfile, UnitProfile};

use crate::csvfmt::g9;
use crate::error::{domain, Error, Result};
use crate::geometry::association_radii;
use crate::model::{linear_to_db, HcnModel, SbsTier, UserClass};
use crate::specfun::GaussLegendre;

pub const JSP_HEADER: &str = "user,model,n,beta_db,value,lower,upper,method";

/// Nodes of the serving-distance average.
const DISTANCE_NODES: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct JspResult {
    pub n: u32,
    pub user: UserClass,
    pub model: &'static str,
    pub beta_db: f64,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub method: &'static str,
}

impl JspResult {
    pub fn write_row<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let opt = |x: Option<f64>| x.map(g9).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            self.user.name(),
            self.model,
            self.n,
            g9(self.beta_db),
            g9(self.value),
            opt(self.lower),
            opt(self.upper),
            self.method
        )
    }
}

fn serving_radius(user: UserClass, model: &HcnModel) -> Result<f64> {
    let (d_m, d_s) = association_radii(model)?;
    Ok(match user {
        UserClass::Mu => d_m,
        UserClass::Su => d_s,
    })
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(domain("number of slots must be at least 1"));
    }
    Ok(())
}

/// PPP joint success probability with the SBS tier replaced by a PPP of
/// density `lambda_s`, averaged over the serving distance.
pub fn ppp_jsp_at(
    n: u32,
    user: UserClass,
    model: &HcnModel,
    lambda_s: f64,
    exact_d: bool,
) -> Result<f64> {
    let a = ppp_rate(n, user, &model.radio, model.mbs_density, lambda_s)?;
    Ok(ppp_average(a, serving_radius(user, model)?, exact_d))
}

/// Closed-form joint success probability when both tiers are PPPs.
pub fn jsp_ppp(n: u32, user: UserClass, model: &HcnModel, exact_d: bool) -> Result<JspResult> {
    let SbsTier::Ppp { density } = model.sbs else {
        return Err(Error::Config(format!(
            "closed form needs a PPP small-cell tier, got {}",
            model.sbs.name()
        )));
    };
    let value = ppp_jsp_at(n, user, model, density, exact_d)?;
    Ok(JspResult {
        n,
        user,
        model: model.sbs.name(),
        beta_db: linear_to_db(model.threshold(user)),
        value,
        lower: None,
        upper: None,
        method: if exact_d { "closed" } else { "closed-printed" },
    })
}

/// Joint success probability given the serving distance `r`.
pub fn jsp_conditional(
    n: u32,
    r: f64,
    user: UserClass,
    model: &HcnModel,
    opts: &PgflOptions,
) -> Result<f64> {
    check_n(n)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain("serving distance must be positive"));
    }
    let radio = &model.radio;
    let alpha = radio.alpha;
    let beta = model.threshold(user);
    let (p_own, p_other) = model.tier_powers(user);
    let ra = r.powf(alpha);
    let own = SirProfile::new(n, beta * ra, alpha, r);
    let cross = SirProfile::new(n, beta * p_other / p_own * ra, alpha, 0.0);
    let mbs = SbsTier::Ppp {
        density: model.mbs_density,
    };
    let log_p = match user {
        UserClass::Mu => {
            log_pgfl(&mbs, None, &own, opts)? + log_pgfl(&model.sbs, None, &cross, opts)?
        }
        UserClass::Su => {
            log_pgfl(&model.sbs, Some(r), &own, opts)? + log_pgfl(&mbs, None, &cross, opts)?
        }
    };
    Ok(log_p.exp().clamp(0.0, 1.0))
}

/// Joint success probability averaged over the serving distance, with the
/// PPP bounds attached for clustered tiers.
pub fn jsp(n: u32, user: UserClass, model: &HcnModel, opts: &PgflOptions) -> Result<JspResult> {
    check_n(n)?;
    model.validate()?;
    let d = serving_radius(user, model)?;
    let gl = GaussLegendre::new(DISTANCE_NODES);
    let mut value = 0.0;
    for (r, w) in gl.mapped(0.0, d) {
        value += w * 2.0 * r / (d * d) * jsp_conditional(n, r, user, model, opts)?;
    }
    let (lower, upper) = match model.sbs {
        SbsTier::Ppp { .. } => (None, None),
        _ => {
            let (lo, hi) = jsp_bounds(n, user, model)?;
            (Some(lo), Some(hi))
        }
    };
    Ok(JspResult {
        n,
        user,
        model: model.sbs.name(),
        beta_db: linear_to_db(model.threshold(user)),
        value: value.clamp(0.0, 1.0),
        lower,
        upper,
        method: match (model.sbs, opts.method) {
            (SbsTier::Socp(_), PgflMethod::QuasiRandom) => "pgfl-qmc",
            _ => "pgfl",
        },
    })
}

/// Lower and upper bounds obtained by replacing the clustered tier with a
/// PPP of a larger or smaller density.
pub fn jsp_bounds(n: u32, user: UserClass, model: &HcnModel) -> Result<(f64, f64)> {
    check_n(n)?;
    let (dense, sparse) = match (&model.sbs, user) {
        (SbsTier::Ppp { density }, _) => (*density, *density),
        (SbsTier::Mcp(s), UserClass::Mu) => (s.density(), s.density() / (1.0 + s.mean_points)),
        (SbsTier::Mcp(s), UserClass::Su) => (
            s.density() + s.mean_points / (PI * s.radius * s.radius),
            s.density() / (1.0 + s.mean_points),
        ),
        (SbsTier::Socp(s), u) => {
            let sparse = s.density() / ((1.0 + s.first_order_mean) * (1.0 + s.second_order_mean));
            let dense = match u {
                UserClass::Mu => s.density(),
                UserClass::Su => {
                    s.density()
                        + s.first_order_mean * s.second_order_mean * gamma_const(s)
                        + s.second_order_mean / (PI * s.second_order_radius.powi(2))
                }
            };
            (dense, sparse)
        }
    };
    Ok((
        ppp_jsp_at(n, user, model, dense, true)?,
        ppp_jsp_at(n, user, model, sparse, true)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{MatClusterSpec, SocpSpec};
    use crate::model::RadioParams;

    fn radio() -> RadioParams {
        RadioParams::new(4.0, 0.01)
            .unwrap()
            .with_powers_dbm(39.0, 13.0)
            .with_thresholds_db(-2.0, -2.0)
    }

    fn ppp_model() -> HcnModel {
        HcnModel::new(7.96e-6, SbsTier::Ppp { density: 1.2e-4 }, radio()).unwrap()
    }

    fn mcp_model(c: f64) -> HcnModel {
        let spec = MatClusterSpec::new(4e-5, c, 10.0).unwrap();
        HcnModel::new(7.96e-6, SbsTier::Mcp(spec), radio())
            .unwrap()
            .with_radii(81.5, 47.0)
    }

    fn socp_model() -> HcnModel {
        let spec = SocpSpec::new(7.96e-6, 10.0, 90.0, 50.0, 3.0, 10.0).unwrap();
        HcnModel::new(7.96e-6, SbsTier::Socp(spec), radio()).unwrap()
    }

    #[test]
    fn conditional_matches_closed_form() {
        let m = ppp_model();
        let o = PgflOptions::default();
        for user in [UserClass::Mu, UserClass::Su] {
            for n in [1, 2, 4] {
                for r in [1.0, 7.0, 30.0] {
                    let a = ppp_rate(n, user, &m.radio, m.mbs_density, 1.2e-4).unwrap();
                    let want = (-a * r * r).exp();
                    let got = jsp_conditional(n, r, user, &m, &o).unwrap();
                    assert!(
                        (got / want - 1.0).abs() < 1e-6,
                        "{user:?} {n} {r}: {got} {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn averaged_matches_closed_form() {
        let m = ppp_model();
        for n in [1, 3] {
            let num = jsp(n, UserClass::Mu, &m, &PgflOptions::default())
                .unwrap()
                .value;
            let closed = jsp_ppp(n, UserClass::Mu, &m, true).unwrap().value;
            assert!((num / closed - 1.0).abs() < 1e-8, "{num} {closed}");
        }
    }

    #[test]
    fn printed_form_is_the_large_cell_limit() {
        let m = ppp_model();
        let exact = jsp_ppp(1, UserClass::Mu, &m, true).unwrap().value;
        let printed = jsp_ppp(1, UserClass::Mu, &m, false).unwrap().value;
        assert!(printed > exact);
        assert!(jsp_ppp(1, UserClass::Mu, &mcp_model(3.0), true).is_err());
    }

    #[test]
    fn vanishing_threshold_gives_one() {
        let mut m = mcp_model(3.0);
        m.radio = m.radio.with_thresholds(1e-12, 1e-12);
        let o = PgflOptions::default();
        for user in [UserClass::Mu, UserClass::Su] {
            let p = jsp_conditional(2, 20.0, user, &m, &o).unwrap();
            assert!(p > 1.0 - 1e-5, "{p}");
        }
    }

    #[test]
    fn mcp_inside_bounds_and_monotone() {
        let o = PgflOptions::default();
        for user in [UserClass::Mu, UserClass::Su] {
            let m = mcp_model(3.0);
            let mut prev = 1.0;
            for n in 1..=3 {
                let res = jsp(n, user, &m, &o).unwrap();
                let (lo, hi) = (res.lower.unwrap(), res.upper.unwrap());
                assert!(
                    lo <= res.value && res.value <= hi,
                    "{user:?} {n}: {lo} {} {hi}",
                    res.value
                );
                assert!(res.value < prev);
                prev = res.value;
            }
        }
    }

    #[test]
    fn mcp_decreasing_in_cluster_size() {
        let o = PgflOptions::default();
        let vals: Vec<f64> = [1.0, 3.0, 6.0]
            .iter()
            .map(|&c| jsp(1, UserClass::Mu, &mcp_model(c), &o).unwrap().value)
            .collect();
        assert!(vals[0] > vals[1] && vals[1] > vals[2], "{vals:?}");
    }

    #[test]
    fn socp_inside_bounds() {
        let o = PgflOptions::default();
        let m = socp_model();
        for user in [UserClass::Mu, UserClass::Su] {
            let res = jsp(1, user, &m, &o).unwrap();
            let (lo, hi) = (res.lower.unwrap(), res.upper.unwrap());
            assert!(
                lo <= res.value && res.value <= hi,
                "{user:?}: {lo} {} {hi}",
                res.value
            );
        }
    }

    #[test]
    fn socp_quasi_random_agrees_with_nested() {
        let m = socp_model();
        let nested = PgflOptions::default();
        let qmc = PgflOptions {
            method: PgflMethod::QuasiRandom,
            ..nested
        };
        for user in [UserClass::Mu, UserClass::Su] {
            for r in [3.0, 8.0] {
                let a = jsp_conditional(2, r, user, &m, &nested).unwrap();
                let b = jsp_conditional(2, r, user, &m, &qmc).unwrap();
                assert!((a / b - 1.0).abs() < 0.01, "{user:?} {r}: {a} {b}");
            }
        }
    }

    #[test]
    fn bounds_collapse_without_clustering() {
        let spec = MatClusterSpec::new(4e-5, 1e-9, 10.0).unwrap();
        let m = HcnModel::new(7.96e-6, SbsTier::Mcp(spec), radio())
            .unwrap()
            .with_radii(80.0, 40.0);
        let (lo, hi) = jsp_bounds(1, UserClass::Mu, &m).unwrap();
        assert!((lo - hi).abs() < 1e-9);
        let (lo, hi) = jsp_bounds(2, UserClass::Su, &socp_model()).unwrap();
        assert!(lo < hi);
    }

    #[test]
    fn csv_row() {
        let r = jsp_ppp(2, UserClass::Su, &ppp_model(), true).unwrap();
        let mut buf = Vec::new();
        r.write_row(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("SU,PPP,2,-2,"), "{s}");
        assert!(s.ends_with(",,,closed\n"));
    }
}
