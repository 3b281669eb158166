//! Interference correlation coefficients.

use std::io::Write;

use super::kernel::{cross_integral, g2_integral};
use super::mc::cluster_pair;
use super::moments::{f_approx, f_exact};
use crate::csvfmt::g9;
use crate::error::{domain, Result};
use crate::model::{RadioParams, SbsTier};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    Exact,
    Approx,
    MonteCarlo,
}

impl ZetaMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ZetaMethod::Exact => "exact",
            ZetaMethod::Approx => "approx",
            ZetaMethod::MonteCarlo => "monte-carlo",
        }
    }
}

/// Correlation coefficient with the pieces it was assembled from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub zeta: f64,
    pub f: f64,
    pub theta: f64,
    pub theta_prime: f64,
    pub c: f64,
    pub radius: f64,
    pub alpha: f64,
    pub eps: f64,
    pub u: f64,
    pub method: ZetaMethod,
    pub stderr: Option<f64>,
}

pub const REPORT_HEADER: &str = "method,u,c,R,alpha,eps,zeta,F,theta,theta_prime,stderr";

impl CorrelationReport {
    pub fn write_row<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let se = self.stderr.map(g9).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.method.name(),
            g9(self.u),
            g9(self.c),
            g9(self.radius),
            g9(self.alpha),
            g9(self.eps),
            g9(self.zeta),
            g9(self.f),
            g9(self.theta),
            g9(self.theta_prime),
            se
        )
    }
}

/// θ′ = (E[h²]/E[h]²) ∫g_ε².
pub fn theta_prime(radio: &RadioParams) -> f64 {
    radio.fading_second_moment / radio.fading_mean.powi(2) * g2_integral(radio)
}

/// ζ = (θ + F)/(θ′ + F) from precomputed pieces; shared by every cluster model.
pub fn zeta_from_parts(theta: f64, f: f64, theta_prime: f64) -> f64 {
    (theta + f) / (theta_prime + f)
}

fn report(
    c: f64,
    radius: f64,
    u: f64,
    f: f64,
    radio: &RadioParams,
    method: ZetaMethod,
) -> Result<CorrelationReport> {
    if !(u >= 0.0 && u.is_finite()) {
        return Err(domain("separation must be non-negative"));
    }
    let theta = cross_integral(u, radio)?;
    let tp = theta_prime(radio);
    Ok(CorrelationReport {
        zeta: zeta_from_parts(theta, f, tp),
        f,
        theta,
        theta_prime: tp,
        c,
        radius,
        alpha: radio.alpha,
        eps: radio.eps,
        u,
        method,
        stderr: None,
    })
}

/// Correlation for a Matérn or second-order cluster tier with mean cluster
/// size `c` and radius `radius`; both models share this computation.
pub fn zeta_cluster(c: f64, radius: f64, u: f64, radio: &RadioParams) -> Result<CorrelationReport> {
    report(
        c,
        radius,
        u,
        f_exact(c, radius, radio)?,
        radio,
        ZetaMethod::Exact,
    )
}

/// As [`zeta_cluster`] with the large-R closed form of F.
pub fn zeta_cluster_approx(
    c: f64,
    radius: f64,
    u: f64,
    radio: &RadioParams,
) -> Result<CorrelationReport> {
    report(
        c,
        radius,
        u,
        f_approx(c, radius, radio)?,
        radio,
        ZetaMethod::Approx,
    )
}

/// As [`zeta_cluster`] for a known F, so sweeps can reuse one F per (c, R).
pub fn zeta_cluster_with_f(
    c: f64,
    radius: f64,
    u: f64,
    f: f64,
    radio: &RadioParams,
) -> Result<CorrelationReport> {
    report(c, radius, u, f, radio, ZetaMethod::Exact)
}

/// Correlation for any small-cell tier; clustered tiers go through
/// [`zeta_cluster`] with their (c, R) pair.
pub fn zeta_tier(tier: &SbsTier, u: f64, radio: &RadioParams) -> Result<CorrelationReport> {
    match tier {
        SbsTier::Ppp { .. } => zeta_ppp(u, radio),
        _ => {
            let (c, radius) = cluster_pair(tier);
            zeta_cluster(c, radius, u, radio)
        }
    }
}

/// Correlation for a PPP tier; independent of the density.
pub fn zeta_ppp(u: f64, radio: &RadioParams) -> Result<CorrelationReport> {
    report(0.0, 0.0, u, 0.0, radio, ZetaMethod::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radio() -> RadioParams {
        RadioParams::new(4.0, 0.01).unwrap()
    }

    #[test]
    fn ppp_temporal_correlation_is_half() {
        let z = zeta_ppp(0.0, &radio()).unwrap();
        assert!((z.zeta - 0.5).abs() < 1e-15);
        let z = zeta_ppp(0.0, &radio().with_fading_moments(1.0, 3.0)).unwrap();
        assert!((z.zeta - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ppp_decorrelates_with_distance() {
        let r = radio();
        let z: Vec<f64> = [0.0, 1.0, 5.0, 50.0]
            .iter()
            .map(|&u| zeta_ppp(u, &r).unwrap().zeta)
            .collect();
        assert!(z.windows(2).all(|w| w[1] < w[0]));
        assert!(z[3] < 1e-5);
    }

    #[test]
    fn clustering_raises_correlation() {
        let r = radio();
        let p = zeta_ppp(1.0, &r).unwrap();
        let m = zeta_cluster(3.0, 5.0, 1.0, &r).unwrap();
        assert!(m.zeta > p.zeta);
        assert!(m.theta_prime > m.theta && m.zeta < 1.0);
        assert_eq!(zeta_cluster(0.0, 5.0, 1.0, &r).unwrap().zeta, p.zeta);
    }

    #[test]
    fn csv_row() {
        let z = zeta_ppp(0.0, &radio()).unwrap();
        let mut buf = Vec::new();
        z.write_row(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "exact,0,0,0,4,0.01,0.5,0,2467.4011,4934.8022,\n");
        assert_eq!(s.split(',').count(), REPORT_HEADER.split(',').count());
    }
}
