//! Interval estimates for Monte Carlo output.

use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `n`.
pub fn wilson(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Sample mean and its standard error.
pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Ratio Σnum/Σden with a delta-method standard error over independent units.
pub fn ratio_se(num: &[f64], den: &[f64]) -> Result<(f64, f64)> {
    let n = num.len();
    if n != den.len() || n < 2 {
        return Err(Error::Estimation(
            "ratio estimate needs at least two paired units".into(),
        ));
    }
    let sn: f64 = num.iter().sum();
    let sd: f64 = den.iter().sum();
    if sd <= 0.0 {
        return Err(Error::Estimation("ratio denominator is zero".into()));
    }
    let r = sn / sd;
    let dbar = sd / n as f64;
    let v = num
        .iter()
        .zip(den)
        .map(|(a, b)| (a - r * b).powi(2))
        .sum::<f64>()
        / (n - 1) as f64;
    Ok((r, (v / n as f64).sqrt() / dbar))
}

/// Pearson correlation with its leave-one-out jackknife standard error.
pub fn pearson_jackknife(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let n = x.len();
    if n != y.len() || n < 3 {
        return Err(Error::Estimation(
            "correlation needs at least three paired samples".into(),
        ));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (a, b) = (a - mx, b - my);
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    let corr = |n: f64, sx: f64, sy: f64, sxx: f64, syy: f64, sxy: f64| {
        let cxy = sxy - sx * sy / n;
        let cxx = sxx - sx * sx / n;
        let cyy = syy - sy * sy / n;
        cxy / (cxx * cyy).sqrt()
    };
    let r = corr(nf, sx, sy, sxx, syy, sxy);
    if !r.is_finite() {
        return Err(Error::Estimation(
            "degenerate variance in correlation estimate".into(),
        ));
    }
    let loo: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let (a, b) = (a - mx, b - my);
            corr(
                nf - 1.0,
                sx - a,
                sy - b,
                sxx - a * a,
                syy - b * b,
                sxy - a * b,
            )
        })
        .collect();
    let mean = loo.iter().sum::<f64>() / nf;
    let var = loo.iter().map(|v| (v - mean).powi(2)).sum::<f64>() * (nf - 1.0) / nf;
    Ok((r, var.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_reference() {
        // 40/100: centre 0.40304, half-width 0.09426
        let (lo, hi) = wilson(40, 100, Z95);
        assert!(
            (lo - 0.308_7).abs() < 1e-3 && (hi - 0.497_6).abs() < 1e-3,
            "{lo} {hi}"
        );
        let (lo, hi) = wilson(0, 10, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.2 && hi < 0.35);
        assert_eq!(wilson(5, 5, Z95).1, 1.0);
    }

    #[test]
    fn pearson_exact_and_degenerate() {
        let x: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v + 1.0).collect();
        let (r, se) = pearson_jackknife(&x, &y).unwrap();
        assert!((r - 1.0).abs() < 1e-12 && se < 1e-6);
        assert!(pearson_jackknife(&x, &vec![1.0; 50]).is_err());
    }

    #[test]
    fn jackknife_se_scales_like_clt() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let n = 4000;
        let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let y: Vec<f64> = x.iter().map(|v| v + rng.random::<f64>()).collect();
        let (r, se) = pearson_jackknife(&x, &y).unwrap();
        // true correlation 1/√2; normal-theory SE (1 − ρ²)/√n
        assert!((r - 0.5f64.sqrt()).abs() < 4.0 * se);
        assert!((se / (0.5 / (n as f64).sqrt()) - 1.0).abs() < 0.3);
    }

    #[test]
    fn ratio_and_mean() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((se - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        let (r, _) = ratio_se(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap();
        assert_eq!(r, 0.5);
        assert!(ratio_se(&[1.0], &[1.0]).is_err());
    }
}
