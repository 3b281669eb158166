//! Globally adaptive Gauss–Kronrod quadrature with semi-infinite support.

use crate::error::{domain, Error, Result};

/// Accuracy and range controls shared by every numerical integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Cut-off used by [`integrate_truncated`].
    pub truncation_radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            truncation_radius: 1e4,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(domain("quadrature tolerances must be positive"));
        }
        if !(self.truncation_radius > 0.0) {
            return Err(domain("truncation radius must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(domain("max_subdivisions must be at least 1"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_36,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    frozen: bool,
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = 0.0;
    let mut resk = fc * WGK[10];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

fn segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let (value, error) = gk21(f, a, b);
    let frozen = (b - a).abs() <= 1e3 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    Segment {
        a,
        b,
        value,
        error,
        frozen,
    }
}

fn totals(segs: &[Segment]) -> (f64, f64) {
    segs.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], spec: &QuadratureSpec) -> Result<Estimate> {
    let mut segs: Vec<Segment> = breaks.windows(2).map(|w| segment(f, w[0], w[1])).collect();
    loop {
        let (value, error) = totals(&segs);
        if !value.is_finite() {
            return Err(domain("integrand produced a non-finite value"));
        }
        if error <= spec.target(value) {
            return Ok(Estimate {
                value,
                error,
                subdivisions: segs.len(),
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.frozen)
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::Accuracy {
                estimate: value,
                error,
            });
        };
        if segs.len() >= spec.max_subdivisions {
            return Err(Error::Accuracy {
                estimate: value,
                error,
            });
        }
        let s = segs[i];
        let mid = 0.5 * (s.a + s.b);
        segs[i] = segment(f, s.a, mid);
        segs.push(segment(f, mid, s.b));
    }
}

/// Integrates `f` over `[lower, upper]`; `upper` may be `f64::INFINITY`, in
/// which case the range is mapped onto `[0, 1)` by `r = lower + t/(1−t)`.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    upper: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    integrate_with_breaks(f, &[lower, upper], spec)
}

/// Like [`integrate_1d`] but with interior breakpoints where `f` has kinks.
/// `points` must be increasing; only the last one may be infinite.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if points.len() < 2 {
        return Err(domain("need at least two integration limits"));
    }
    if points.iter().any(|p| p.is_nan())
        || points[..points.len() - 1].iter().any(|p| !p.is_finite())
    {
        return Err(domain("integration limits must be finite except the last"));
    }
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("integration limits must be increasing"));
    }
    let last = points[points.len() - 1];
    if last == f64::INFINITY {
        let n = points.len();
        let b = points[n - 2];
        let g = |x: f64| {
            if x < b {
                f(x)
            } else {
                let t = x - b;
                let s = 1.0 - t;
                if s <= 0.0 {
                    0.0
                } else {
                    f(b + t / s) / (s * s)
                }
            }
        };
        let mut mapped = points[..n - 1].to_vec();
        mapped.push(b + 1.0);
        adaptive(&g, &mapped, spec)
    } else {
        adaptive(&f, points, spec)
    }
}

/// Integrates `f` on `[lower, truncation_radius]` and adds a tail bound for
/// integrands dominated by `coeff·r^{1−alpha}` beyond the cut (alpha > 2).
pub fn integrate_truncated<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    coeff: f64,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(alpha > 2.0) {
        return Err(domain("tail bound needs alpha > 2"));
    }
    let r = spec.truncation_radius;
    if r <= lower {
        return Err(domain("truncation radius must exceed the lower limit"));
    }
    let body = integrate_1d(f, lower, r, spec)?;
    let tail = coeff.abs() * r.powf(2.0 - alpha) / (alpha - 2.0);
    Ok(Estimate {
        value: body.value + 0.5 * tail,
        error: body.error + 0.5 * tail,
        subdivisions: body.subdivisions,
    })
}

/// Collects the first failure raised inside a nested integrand, since the
/// adaptive driver only accepts infallible closures.
#[derive(Debug, Default)]
pub(crate) struct ErrorSlot(std::cell::RefCell<Option<Error>>);

impl ErrorSlot {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn take(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    }

    pub(crate) fn finish<T>(self, r: Result<T>) -> Result<T> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn radial_kernel_integral() {
        let est = integrate_1d(
            |r| r / (r.powi(4) + 0.01),
            0.0,
            f64::INFINITY,
            &QuadratureSpec::default(),
        )
        .unwrap();
        // α⁻¹ ε^{(2−α)/α} π csc(2π/α) at α = 4, ε = 0.01
        let want = 0.25 * 0.01f64.powf(-0.5) * PI;
        assert!((est.value - want).abs() < 1e-8 * want, "{}", est.value);
        assert!(est.error <= 1e-8 * want);
    }

    #[test]
    fn constant_on_unit_interval() {
        let est = integrate_1d(|_| 1.0, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn squared_kernel() {
        let est = integrate_1d(
            |r| r / (r.powi(4) + 0.01).powi(2),
            0.0,
            f64::INFINITY,
            &QuadratureSpec::default(),
        )
        .unwrap();
        // u = r² gives ½∫du/(u²+ε)² = π/(8 ε^{3/2})
        let want = PI / (8.0 * 0.01f64.powf(1.5));
        assert!((est.value / want - 1.0).abs() < 1e-8, "{}", est.value);
    }

    #[test]
    fn lower_endpoint_singularity() {
        let est = integrate_1d(|x| 1.0 / x.sqrt(), 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn kink_with_breakpoint() {
        let f = |x: f64| (x - 0.3).abs();
        let est = integrate_with_breaks(f, &[0.0, 0.3, 1.0], &QuadratureSpec::default()).unwrap();
        assert!((est.value - (0.045 + 0.245)).abs() < 1e-13);
        let est = integrate_with_breaks(
            |x| (-x).exp(),
            &[0.0, 2.0, 5.0, f64::INFINITY],
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((est.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reports_accuracy_failure() {
        let spec = QuadratureSpec {
            max_subdivisions: 3,
            ..Default::default()
        };
        let err = integrate_1d(|x| (50.0 * x).sin().abs(), 0.0, 10.0, &spec).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn truncated_tail_bound_covers_error() {
        let spec = QuadratureSpec {
            truncation_radius: 200.0,
            ..Default::default()
        };
        let est = integrate_truncated(|r| r / (r.powi(4) + 0.01), 0.0, 1.0, 4.0, &spec).unwrap();
        let want = 0.25 * 0.01f64.powf(-0.5) * PI;
        assert!((est.value - want).abs() <= est.error);
    }

    #[test]
    fn rejects_bad_spec() {
        let spec = QuadratureSpec {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(integrate_1d(|x| x, 0.0, 1.0, &spec).is_err());
        assert!(integrate_1d(|x| x, 1.0, 0.0, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn deterministic() {
        let f = |r: f64| (-r).exp() * r.cos();
        let a = integrate_1d(f, 0.0, f64::INFINITY, &QuadratureSpec::default());
        let b = integrate_1d(f, 0.0, f64::INFINITY, &QuadratureSpec::default());
        let (a, b) = (a.unwrap(), b.unwrap());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error.to_bits(), b.error.to_bits());
    }
}
