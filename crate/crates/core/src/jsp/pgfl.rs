//! Probability generating functionals of the PPP, Matérn and second-order
//! cluster processes for radial profiles centred at the origin.

use std::f64::consts::PI;

use super::profile::Profile;
use crate::error::{domain, Result};
use crate::geometry::{first_order_density, MatClusterSpec, SocpSpec};
use crate::model::SbsTier;
use crate::specfun::{
    integrate_with_breaks, ErrorSlot, GaussLegendre, MonotoneCubic, QuadratureSpec,
};

/// How the second-order cluster averages over the first-order law are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgflMethod {
    /// Tensor Gauss–Legendre rules over (radius, angle).
    Nested,
    /// Halton points in the first-order disk.
    QuasiRandom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgflOptions {
    pub method: PgflMethod,
    /// Interpolation nodes for the cached radial functions.
    pub grid_nodes: usize,
    pub qmc_nodes: usize,
    pub rel_tol: f64,
}

impl Default for PgflOptions {
    fn default() -> Self {
        Self {
            method: PgflMethod::Nested,
            grid_nodes: 256,
            qmc_nodes: 1 << 16,
            rel_tol: 1e-8,
        }
    }
}

impl PgflOptions {
    fn outer(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
            ..Default::default()
        }
    }

    fn inner(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol * 0.1,
            abs_tol: 1e-15,
            max_subdivisions: 4000,
            ..Default::default()
        }
    }
}

/// E ∏ v(X) over the process, or over its reduced Palm version given a
/// point at distance `palm` from the origin.
pub fn pgfl(
    tier: &SbsTier,
    palm: Option<f64>,
    profile: &dyn Profile,
    opts: &PgflOptions,
) -> Result<f64> {
    Ok(log_pgfl(tier, palm, profile, opts)?.exp())
}

/// Logarithm of [`pgfl`].
pub fn log_pgfl(
    tier: &SbsTier,
    palm: Option<f64>,
    profile: &dyn Profile,
    opts: &PgflOptions,
) -> Result<f64> {
    if let Some(r) = palm {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(domain("Palm point distance must be non-negative"));
        }
    }
    match tier {
        SbsTier::Ppp { density } => Ok(-density * profile_integral(profile, opts)?),
        SbsTier::Mcp(spec) => mcp_log_pgfl(spec, palm, profile, opts),
        SbsTier::Socp(spec) => SocpTables::build(spec, profile, opts)?.log_pgfl(palm),
    }
}

/// ∫ω(|x|) dx over the plane.
pub fn profile_integral(profile: &dyn Profile, opts: &PgflOptions) -> Result<f64> {
    let e = profile.exclusion();
    let s = profile.scale();
    let pts = sorted_breaks(&[s, 4.0 * s], e, f64::INFINITY);
    let est = integrate_with_breaks(|r| profile.omega(r) * r, &pts, &opts.outer())?;
    Ok(2.0 * PI * est.value)
}

fn sorted_breaks(extra: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = extra
        .iter()
        .copied()
        .filter(|p| *p > lo && *p < hi)
        .collect();
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| *a == *b || (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    pts
}

/// Angular length of the circle |y| = t inside the disk of radius `radius`
/// centred at distance `rho` from the origin, times t.
fn disk_weight(t: f64, rho: f64, radius: f64) -> f64 {
    if t + rho <= radius {
        return 2.0 * PI * t;
    }
    if (t - rho).abs() >= radius || rho == 0.0 || t == 0.0 {
        return 0.0;
    }
    let c = ((t * t + rho * rho - radius * radius) / (2.0 * t * rho)).clamp(-1.0, 1.0);
    2.0 * t * c.acos()
}

/// Average of a radial function over the disk of radius `radius` centred at
/// distance `rho` from the origin.
fn disk_average<F: Fn(f64) -> f64>(
    f: F,
    rho: f64,
    radius: f64,
    extra: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let lo = (rho - radius).max(0.0);
    let hi = rho + radius;
    let mut pts = vec![(radius - rho).abs()];
    pts.extend_from_slice(extra);
    let pts = sorted_breaks(&pts, lo, hi);
    let est = integrate_with_breaks(|t| f(t) * disk_weight(t, rho, radius), &pts, spec)?;
    Ok(est.value / (PI * radius * radius))
}

fn mcp_log_pgfl(
    spec: &MatClusterSpec,
    palm: Option<f64>,
    profile: &dyn Profile,
    opts: &PgflOptions,
) -> Result<f64> {
    let (c, radius) = (spec.mean_points, spec.radius);
    if c == 0.0 {
        return Ok(0.0);
    }
    let e = profile.exclusion();
    let s = profile.scale();
    let inner = opts.inner();
    let omega_bar =
        |rho: f64| disk_average(|t| profile.omega(t), rho, radius, &[e, s, 4.0 * s], &inner);
    let slot = ErrorSlot::new();
    let outer = |rho: f64| -(-c * slot.take(omega_bar(rho))).exp_m1() * rho;
    let start = (e - radius).max(0.0);
    let pts = sorted_breaks(
        &[e, e + radius, s, s + radius, radius, 4.0 * s + radius],
        start,
        f64::INFINITY,
    );
    let est = integrate_with_breaks(outer, &pts, &opts.outer());
    let mut log_g = -spec.parent_density * 2.0 * PI * slot.finish(est)?.value;
    if let Some(r) = palm {
        let slot = ErrorSlot::new();
        let f = |t: f64| (-c * slot.take(omega_bar(t))).exp();
        let extra = [e - radius, e + radius, s + radius];
        let avg = disk_average(f, r, radius, &extra, &opts.outer());
        log_g += slot.finish(avg)?.ln();
    }
    Ok(log_g)
}

/// Quadrature nodes (y, cos θ, weight) for averages over the first-order law.
fn first_order_nodes(spec: &SocpSpec, opts: &PgflOptions) -> Vec<(f64, f64, f64)> {
    let r1 = spec.first_order_radius;
    match opts.method {
        PgflMethod::Nested => {
            let gl = GaussLegendre::new(16);
            let angle_panels = [
                (0.0, 0.5 * PI),
                (0.5 * PI, 0.75 * PI),
                (0.75 * PI, 0.875 * PI),
                (0.875 * PI, PI),
            ];
            let mut nodes = Vec::with_capacity(64 * 64);
            for k in 0..4 {
                let (a, b) = (r1 * k as f64 / 4.0, r1 * (k + 1) as f64 / 4.0);
                for (y, wy) in gl.mapped(a, b) {
                    let fy = first_order_density(y, spec) * y * wy;
                    for &(p, q) in &angle_panels {
                        for (th, wt) in gl.mapped(p, q) {
                            nodes.push((y, th.cos(), 2.0 * fy * wt));
                        }
                    }
                }
            }
            nodes
        }
        PgflMethod::QuasiRandom => {
            let n = opts.qmc_nodes.max(1);
            let area = PI * r1 * r1;
            (1..=n as u64)
                .map(|i| {
                    let y = r1 * radical_inverse(i, 2).sqrt();
                    let th = 2.0 * PI * radical_inverse(i, 3);
                    (y, th.cos(), area * first_order_density(y, spec) / n as f64)
                })
                .collect()
        }
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut x = 0.0;
    while i > 0 {
        x += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    x
}

/// Nodes on [0, max] whose spacing grows geometrically from `first`.
fn stretched_grid(max: f64, n: usize, first: f64) -> Vec<f64> {
    let k = (n - 1) as f64;
    if first * k >= max {
        return (0..n).map(|i| max * i as f64 / k).collect();
    }
    // solve max (e^h − 1)/(e^{kh} − 1) = first for h
    let step = |h: f64| max * h.exp_m1() / (k * h).exp_m1();
    let (mut lo, mut hi) = (1e-12, 50.0 / k);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if step(mid) > first {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h = 0.5 * (lo + hi);
    let denom = (k * h).exp_m1();
    let mut g: Vec<f64> = (0..n)
        .map(|i| max * (i as f64 * h).exp_m1() / denom)
        .collect();
    g[n - 1] = max;
    g
}

/// Cached radial functions of the second-order cluster PGFL for one profile.
struct SocpTables<'a> {
    spec: &'a SocpSpec,
    profile: &'a dyn Profile,
    opts: &'a PgflOptions,
    nodes: Vec<(f64, f64, f64)>,
    /// 1 − exp(−c_S Ω_S) on [0, h_max].
    h: MonotoneCubic,
    /// First-order average of `h` on [0, psi_max].
    psi: MonotoneCubic,
    grid: Vec<f64>,
}

impl<'a> SocpTables<'a> {
    fn build(spec: &'a SocpSpec, profile: &'a dyn Profile, opts: &'a PgflOptions) -> Result<Self> {
        let e = profile.exclusion();
        let s = profile.scale();
        let (r1, r2) = (spec.first_order_radius, spec.second_order_radius);
        let psi_max = (40.0 * (s + e)).max(10.0 * (r1 + r2));
        let h_max = psi_max + r1;
        let first = s.min(r2) / 20.0;
        let n = opts.grid_nodes.max(8);
        let inner = opts.inner();
        let hx = stretched_grid(h_max, n, first);
        let hy = hx
            .iter()
            .map(|&t| {
                let om = disk_average(|u| profile.omega(u), t, r2, &[e, s, 4.0 * s], &inner)?;
                Ok(-(-spec.second_order_mean * om).exp_m1())
            })
            .collect::<Result<Vec<f64>>>()?;
        let h = MonotoneCubic::new(hx, hy)?;
        let nodes = first_order_nodes(spec, opts);
        let mut t = Self {
            spec,
            profile,
            opts,
            nodes,
            psi: h.clone(),
            h,
            grid: Vec::new(),
        };
        let px = stretched_grid(psi_max, n, first);
        let py: Vec<f64> = px
            .iter()
            .map(|&rho| t.first_order_average(rho, |u| t.h_at(u)))
            .collect();
        t.psi = MonotoneCubic::new(px.clone(), py)?;
        t.grid = px;
        Ok(t)
    }

    fn h_at(&self, t: f64) -> f64 {
        if t <= self.h.x_max() {
            self.h.eval(t)
        } else {
            -(-self.spec.second_order_mean * self.profile.omega(t)).exp_m1()
        }
    }

    fn psi_at(&self, t: f64) -> f64 {
        if t <= self.psi.x_max() {
            self.psi.eval(t)
        } else {
            self.spec.second_order_mean * self.profile.omega(t)
        }
    }

    fn first_order_average<F: Fn(f64) -> f64>(&self, rho: f64, f: F) -> f64 {
        self.nodes
            .iter()
            .map(|&(y, c, w)| w * f((rho * rho + y * y + 2.0 * rho * y * c).max(0.0).sqrt()))
            .sum()
    }

    fn log_pgfl(&self, palm: Option<f64>) -> Result<f64> {
        let (c1, c2) = (self.spec.first_order_mean, self.spec.second_order_mean);
        let gl = GaussLegendre::new(4);
        let mut body = 0.0;
        for w in self.grid.windows(2) {
            body += gl.integrate(|rho| -(-c1 * self.psi.eval(rho)).exp_m1() * rho, w[0], w[1]);
        }
        let tail_start = self.psi.x_max();
        let s = self.profile.scale();
        let pts = sorted_breaks(&[4.0 * s], tail_start, f64::INFINITY);
        let tail = integrate_with_breaks(
            |rho| c1 * c2 * self.profile.omega(rho) * rho,
            &pts,
            &self.opts.outer(),
        )?;
        let mut log_g = -self.spec.parent_density * 2.0 * PI * (body + tail.value);
        if let Some(r) = palm {
            let r2 = self.spec.second_order_radius;
            let f = |t: f64| {
                let b = self.first_order_average(t, |u| (-c1 * self.psi_at(u)).exp());
                (1.0 - self.h_at(t)) * b
            };
            let e = self.profile.exclusion();
            let avg = disk_average(f, r, r2, &[e - r2, e + r2], &self.opts.outer())?;
            log_g += avg.ln();
        }
        Ok(log_g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jsp::profile::{SirProfile, UnitProfile};

    #[test]
    fn disk_weight_integrates_to_area() {
        let q = QuadratureSpec::default();
        for &(rho, radius) in &[(0.0, 2.0), (1.0, 2.0), (5.0, 2.0), (2.0, 2.0)] {
            let a = disk_average(|_| 1.0, rho, radius, &[], &q).unwrap();
            assert!((a - 1.0).abs() < 1e-9, "{rho} {radius} {a}");
        }
    }

    #[test]
    fn disk_average_of_square_norm() {
        // mean of |x|² over a disk of radius R centred at distance ρ is ρ² + R²/2
        let q = QuadratureSpec::default();
        let a = disk_average(|t| t * t, 3.0, 2.0, &[], &q).unwrap();
        assert!((a - 11.0).abs() < 1e-9);
    }

    #[test]
    fn unit_profile_gives_one() {
        let o = PgflOptions::default();
        let mcp = SbsTier::Mcp(MatClusterSpec::new(1e-3, 3.0, 10.0).unwrap());
        let socp = SbsTier::Socp(SocpSpec::new(1e-4, 10.0, 90.0, 50.0, 3.0, 10.0).unwrap());
        for t in [SbsTier::Ppp { density: 1e-3 }, mcp, socp] {
            assert_eq!(pgfl(&t, None, &UnitProfile, &o).unwrap(), 1.0);
            let v = pgfl(&t, Some(5.0), &UnitProfile, &o).unwrap();
            assert!((v - 1.0).abs() < 1e-9, "{} {v}", t.name());
        }
    }

    #[test]
    fn grid_is_increasing() {
        let g = stretched_grid(1000.0, 256, 0.01);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[255], 1000.0);
        assert!((g[1] - 0.01).abs() < 1e-6);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn halton_points() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(4, 3) - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn sir_profile_ppp_closed_form() {
        let o = PgflOptions::default();
        let p = SirProfile::new(2, 3.0f64 * 16.0, 4.0, 0.0);
        let got = log_pgfl(&SbsTier::Ppp { density: 1e-3 }, None, &p, &o).unwrap();
        let want = -1e-3 * 48f64.sqrt() * crate::jsp::u_n(2, 0.5).unwrap();
        assert!((got / want - 1.0).abs() < 1e-8);
    }
}
