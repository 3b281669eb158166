//! Parameter sets of the reference studies.

use crate::error::Result;
use crate::geometry::{MatClusterSpec, SocpSpec};
use crate::model::{HcnModel, RadioParams, SbsTier};

/// MBS density shared by the joint-success and retransmission studies.
pub const LAMBDA_M: f64 = 7.96e-6;
/// Small-cell density of the PPP baseline and of the Matérn tier.
pub const LAMBDA_P: f64 = 1.2e-4;

/// α = 4, ε = 0.01, unit powers, Rayleigh fading.
pub fn correlation_radio() -> RadioParams {
    RadioParams::new(4.0, 0.01).expect("valid radio parameters")
}

/// Matérn tier of the correlation study: λ_M° = 0.1, R = 5.
pub fn correlation_mcp(c: f64) -> Result<SbsTier> {
    Ok(SbsTier::Mcp(MatClusterSpec::new(0.1, c, 5.0)?))
}

/// P_m = 39 dBm, P_s = 13 dBm, α = 4 and a common threshold.
pub fn jsp_radio(beta_db: f64) -> RadioParams {
    RadioParams::new(4.0, 0.01)
        .expect("valid radio parameters")
        .with_powers_dbm(39.0, 13.0)
        .with_thresholds_db(beta_db, beta_db)
}

pub fn jsp_ppp(beta_db: f64) -> Result<HcnModel> {
    HcnModel::new(
        LAMBDA_M,
        SbsTier::Ppp { density: LAMBDA_P },
        jsp_radio(beta_db),
    )
}

/// λ_M° = 4e-5, c_M = 3, R_M = 10, so λ_M = λ_p.
pub fn jsp_mcp(beta_db: f64) -> Result<HcnModel> {
    let spec = MatClusterSpec::new(LAMBDA_P / 3.0, 3.0, 10.0)?;
    HcnModel::new(LAMBDA_M, SbsTier::Mcp(spec), jsp_radio(beta_db))
}

/// Parents are the MBSs; c_S′ = 15, σ = 50, c_S = 3, with R_S′ = 90 and
/// R_S = 10 taken from the network illustration.
pub fn socp_spec() -> Result<SocpSpec> {
    SocpSpec::new(LAMBDA_M, 15.0, 90.0, 50.0, 3.0, 10.0)
}

pub fn jsp_socp(beta_db: f64) -> Result<HcnModel> {
    HcnModel::new(LAMBDA_M, SbsTier::Socp(socp_spec()?), jsp_radio(beta_db))
}

/// PPP, Matérn and second-order tiers at the second-order density λ_S, all
/// with the second-order association radii.
pub fn ordering_chain(beta_db: f64) -> Result<[HcnModel; 3]> {
    let socp = jsp_socp(beta_db)?;
    let ls = socp.sbs.density();
    let radii = crate::geometry::association_radii(&socp)?;
    let ppp = HcnModel::new(LAMBDA_M, SbsTier::Ppp { density: ls }, jsp_radio(beta_db))?;
    let mcp = HcnModel::new(
        LAMBDA_M,
        SbsTier::Mcp(MatClusterSpec::new(ls / 3.0, 3.0, 10.0)?),
        jsp_radio(beta_db),
    )?;
    Ok([ppp, mcp, socp].map(|m| m.with_radii(radii.0, radii.1)))
}

/// Retransmission study: λ_p fixed, c SBSs per cluster of radius 10,
/// β₁ = −2 dB for the MBS tier and β₂ = −3 dB for the SBS tier.
pub fn retrans_mcp(c: f64) -> Result<HcnModel> {
    let radio = RadioParams::new(4.0, 0.01)?
        .with_powers_dbm(39.0, 13.0)
        .with_thresholds_db(-2.0, -3.0);
    HcnModel::new(
        LAMBDA_M,
        SbsTier::Mcp(MatClusterSpec::new(LAMBDA_P / c, c, 10.0)?),
        radio,
    )
}

/// Three tiers of density 0.3 for the mean-interference comparison.
pub fn equal_density_tiers() -> Result<[SbsTier; 3]> {
    Ok([
        SbsTier::Ppp { density: 0.3 },
        SbsTier::Mcp(MatClusterSpec::new(0.1, 3.0, 5.0)?),
        SbsTier::Socp(SocpSpec::new(0.01, 10.0, 20.0, 10.0, 3.0, 5.0)?),
    ])
}

/// Network illustration: λ_m = 1e-4 with a Matérn or a second-order tier.
pub fn illustration(socp: bool) -> Result<HcnModel> {
    let radio = correlation_radio();
    let sbs = if socp {
        SbsTier::Socp(SocpSpec::new(1e-4, 10.0, 90.0, 50.0, 3.0, 10.0)?)
    } else {
        SbsTier::Mcp(MatClusterSpec::new(1e-3, 3.0, 10.0)?)
    };
    HcnModel::new(1e-4, sbs, radio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::association_radii;

    #[test]
    fn radii_of_the_reference_models() {
        let (dm, ds) = association_radii(&jsp_mcp(0.0).unwrap()).unwrap();
        assert!(
            (dm - 81.47).abs() < 0.01 && (ds - 47.04).abs() < 0.01,
            "{dm} {ds}"
        );
        // (π·16·7.96e-6)^{-1/2} and that over √45
        let (dm, ds) = association_radii(&jsp_socp(0.0).unwrap()).unwrap();
        assert!(
            (dm - 49.9929).abs() < 1e-3 && (ds - 7.45253).abs() < 1e-4,
            "{dm} {ds}"
        );
        let (dm, _) = association_radii(&jsp_ppp(0.0).unwrap()).unwrap();
        assert!((dm - 49.87).abs() < 0.01, "{dm}");
        for m in ordering_chain(0.0).unwrap() {
            assert_eq!(
                association_radii(&m).unwrap(),
                association_radii(&jsp_socp(0.0).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn equal_densities() {
        for t in equal_density_tiers().unwrap() {
            assert!((t.density() - 0.3).abs() < 1e-12);
        }
        let [a, b, c] = ordering_chain(0.0).unwrap();
        assert!((a.sbs.density() - b.sbs.density()).abs() < 1e-15);
        assert!((b.sbs.density() - c.sbs.density()).abs() < 1e-15);
    }
}
