//! PPP closed forms: Q_n, U_n, the PPP joint success probability and γ.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::geometry::SocpSpec;
use crate::model::{RadioParams, UserClass};
use crate::specfun::{gamma_fn, hyp2f1, ln_gamma};

fn check(n: u32, delta: f64) -> Result<()> {
    if n < 1 {
        return Err(domain("number of slots must be at least 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(())
}

fn binomial(n: u32, m: u32) -> f64 {
    (1..=m).fold(1.0, |acc, k| acc * (n - m + k) as f64 / k as f64)
}

/// Q_n(β) = πδ Σ_{m=1}^{n} C(n,m) (−1)^{m+1} β^m/(m−δ) ₂F₁(m, m−δ; m−δ+1; −β).
pub fn q_n(n: u32, beta: f64, delta: f64) -> Result<f64> {
    check(n, delta)?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(domain("threshold must be positive"));
    }
    let mut sum = 0.0;
    for m in 1..=n {
        let mf = m as f64;
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let f = hyp2f1(mf, mf - delta, mf - delta + 1.0, -beta)?;
        sum += sign * binomial(n, m) * beta.powi(m as i32) / (mf - delta) * f;
    }
    Ok(PI * delta * sum)
}

/// U_n = π²δ/sin(πδ) · Γ(n+δ)/(Γ(n)Γ(1+δ)).
pub fn u_n(n: u32, delta: f64) -> Result<f64> {
    check(n, delta)?;
    let nf = n as f64;
    let ratio = (ln_gamma(nf + delta)? - ln_gamma(nf)?).exp() / gamma_fn(1.0 + delta)?;
    Ok(PI * PI * delta / (PI * delta).sin() * ratio)
}

/// Exponent rate `a` with P(r) = exp(−a r²) for PPP tiers.
pub fn ppp_rate(
    n: u32,
    user: UserClass,
    radio: &RadioParams,
    lambda_m: f64,
    lambda_s: f64,
) -> Result<f64> {
    let d = radio.delta();
    let un = u_n(n, d)?;
    Ok(match user {
        UserClass::Mu => {
            lambda_m * q_n(n, radio.beta_m, d)?
                + lambda_s * (radio.beta_m * radio.p_s / radio.p_m).powf(d) * un
        }
        UserClass::Su => {
            lambda_m * (radio.beta_s * radio.p_m / radio.p_s).powf(d) * un
                + lambda_s * q_n(n, radio.beta_s, d)?
        }
    })
}

/// Averages exp(−a r²) over the serving-distance law on [0, D].
///
/// `exact_d` gives (1 − e^{−aD²})/(aD²); otherwise the simplified 1/(aD²).
pub fn ppp_average(a: f64, d: f64, exact_d: bool) -> f64 {
    let x = a * d * d;
    if exact_d {
        if x < 1e-12 {
            1.0 - 0.5 * x
        } else {
            -(-x).exp_m1() / x
        }
    } else {
        1.0 / x
    }
}

/// γ = min{ max_y f_S′(y), 1/(πR_S²) }.
pub fn gamma_const(spec: &SocpSpec) -> f64 {
    let r1 = spec.first_order_radius;
    let s2 = spec.sigma * spec.sigma;
    let e = (-r1 * r1 / (2.0 * s2)).exp();
    let first = (1.0 - e) / (PI * r1 * r1 + 2.0 * PI * s2 * (e - 1.0));
    let second = 1.0 / (PI * spec.second_order_radius.powi(2));
    first.min(second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{integrate_1d, QuadratureSpec};

    /// 2π∫₁^∞ [1 − (1 + βy^{−α})^{−n}] y dy by adaptive quadrature.
    fn q_oracle(n: u32, beta: f64, delta: f64) -> f64 {
        let a = 2.0 / delta;
        let f = |y: f64| -(-(n as f64) * (beta * y.powf(-a)).ln_1p()).exp_m1() * y;
        2.0 * PI
            * integrate_1d(
                f,
                1.0,
                f64::INFINITY,
                &QuadratureSpec::default().with_rel_tol(1e-11),
            )
            .unwrap()
            .value
    }

    #[test]
    fn q_n_values() {
        let v = q_n(1, 1.0, 0.5).unwrap();
        assert!((v - PI * PI / 4.0).abs() < 1e-12);
        let frozen = [
            (1, 0.5, 1.367_252_148_217_173),
            (2, 1.0, 4.486_499_813_805_958),
            (4, 3.162_277_660_168_379_5, 16.056_132_640_546_31),
        ];
        for (n, b, want) in frozen {
            assert!((q_n(n, b, 0.5).unwrap() / want - 1.0).abs() < 1e-10);
        }
        assert!((q_n(2, 1.0, 0.4).unwrap() / 2.860_433_882_385_285 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn q_n_matches_quadrature() {
        for &delta in &[0.4, 0.5, 0.6667] {
            for n in 1..=5 {
                for &b in &[0.1, 0.631, 1.0, 3.16] {
                    let got = q_n(n, b, delta).unwrap();
                    let want = q_oracle(n, b, delta);
                    assert!(
                        (got / want - 1.0).abs() < 1e-8,
                        "n={n} b={b} d={delta}: {got} {want}"
                    );
                }
            }
        }
        assert!(q_n(1, 1e-9, 0.5).unwrap() < 1e-8);
        assert!(q_n(1, 1.0, 1.0).is_err());
        assert!(q_n(0, 1.0, 0.5).is_err());
    }

    #[test]
    fn u_n_values() {
        assert!((u_n(1, 0.5).unwrap() - PI * PI / 2.0).abs() < 1e-12);
        assert!((u_n(2, 0.5).unwrap() - 0.75 * PI * PI).abs() < 1e-12);
        assert!((u_n(4, 0.5).unwrap() - 10.794_879_813_691_486).abs() < 1e-10);
        let v: Vec<f64> = (1..8).map(|n| u_n(n, 0.5).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn u_n_is_unrestricted_profile_integral() {
        let q = QuadratureSpec::default().with_rel_tol(1e-11);
        for n in 1..=4u32 {
            let f = |y: f64| -(-(n as f64) * (y.powi(-4)).ln_1p()).exp_m1() * y;
            let want = 2.0 * PI * integrate_1d(f, 0.0, f64::INFINITY, &q).unwrap().value;
            assert!((u_n(n, 0.5).unwrap() / want - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn gamma_constant() {
        let s = SocpSpec::new(1e-4, 10.0, 90.0, 50.0, 3.0, 10.0).unwrap();
        assert!((gamma_const(&s) - 6.243_237_068_077_638e-5).abs() < 1e-17);
        let tiny = SocpSpec::new(1e-4, 10.0, 90.0, 1e-3, 3.0, 10.0).unwrap();
        assert!((gamma_const(&tiny) - 1.0 / (PI * 8100.0)).abs() < 1e-12);
        let wide = SocpSpec::new(1e-4, 10.0, 90.0, 50.0, 3.0, 100.0).unwrap();
        assert!(gamma_const(&wide) <= 1.0 / (PI * 1e4));
    }

    #[test]
    fn averaging_forms() {
        assert!((ppp_average(1e-20, 1.0, true) - 1.0).abs() < 1e-15);
        let a = 7.96e-6 * q_n(1, 0.630_957_344_480_193_2, 0.5).unwrap();
        let d = 199.971_695_919_242_34;
        assert!((ppp_average(a, d, true) - 0.775_081_527_292_383_4).abs() < 1e-12);
        assert!((ppp_average(a, d, false) - 1.875).abs() < 1e-3);
    }
}
