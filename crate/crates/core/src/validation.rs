//! Acceptance checks comparing analytic results with each other and with
//! simulation.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correlation::{
    estimate_zeta_mc, f_approx, f_exact, mean_interference, zeta_cluster_with_f, zeta_ppp,
    zeta_tier,
};
use crate::error::Result;
use crate::geometry::{MatClusterSpec, SocpSpec};
use crate::jsp::{jsp_bounds, jsp_ppp};
use crate::model::{HcnModel, SbsTier, UserClass};
use crate::presets;
use crate::simkit::{
    estimate_mean_interference, simulate_jsp_sweep, simulate_retransmission, JspEstimate,
    RetransEstimate, SchemeDescriptor, SimConfig,
};
use crate::specfun::{gamma_fn, hyp2f1, integrate_1d, QuadratureSpec};

/// Identifier and short title of every criterion.
pub const CRITERIA: [(u32, &str); 11] = [
    (1, "cluster correlation dominates PPP correlation"),
    (2, "correlation monotone in cluster size and radius"),
    (3, "Matern and second-order tiers share the correlation"),
    (4, "simulated correlation matches the analytic value"),
    (5, "mean interference invariant to clustering"),
    (6, "large-radius approximation of F"),
    (7, "simulated PPP joint success matches the closed form"),
    (8, "simulated joint success inside the PPP bounds"),
    (9, "joint success ordered PPP, Matern, second-order"),
    (10, "retransmission scheme ordering"),
    (11, "special-function identities"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.1}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub seed: u64,
    /// Multiplies the density fed to the closed form of the mean
    /// interference; anything but 1 should make criterion 5 fail.
    pub lambda_perturbation: f64,
    pub zeta_trials: usize,
    pub mean_trials: usize,
    pub mean_probes: usize,
    pub ppp_trials: usize,
    pub bound_trials: usize,
    pub chain_trials: usize,
    pub retrans_trials: usize,
    pub retrans_slots: u32,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            seed: 20_160_601,
            lambda_perturbation: 1.0,
            zeta_trials: 10_000,
            mean_trials: 6_000,
            mean_probes: 32,
            ppp_trials: 100_000,
            bound_trials: 20_000,
            chain_trials: 40_000,
            retrans_trials: 400,
            retrans_slots: 50,
        }
    }
}

const GRID_C: [f64; 4] = [0.0, 1.0, 3.0, 5.0];
const GRID_R: [f64; 4] = [2.0, 5.0, 10.0, 50.0];
const GRID_U: [f64; 3] = [0.0, 1.0, 5.0];

/// ζ_M on the (c, R, u) grid, indexed [c][R][u], with ζ_P per u.
fn zeta_grid() -> Result<(Vec<Vec<Vec<f64>>>, Vec<f64>)> {
    let radio = presets::correlation_radio();
    let f1: Vec<f64> = GRID_R
        .iter()
        .map(|&r| f_exact(1.0, r, &radio))
        .collect::<Result<_>>()?;
    let zp: Vec<f64> = GRID_U
        .iter()
        .map(|&u| zeta_ppp(u, &radio).map(|z| z.zeta))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for &c in &GRID_C {
        let mut by_r = Vec::new();
        for (ri, &r) in GRID_R.iter().enumerate() {
            let row = GRID_U
                .iter()
                .map(|&u| zeta_cluster_with_f(c, r, u, c * f1[ri], &radio).map(|z| z.zeta))
                .collect::<Result<Vec<f64>>>()?;
            by_r.push(row);
        }
        out.push(by_r);
    }
    Ok((out, zp))
}

fn criterion1() -> Result<(bool, String)> {
    let (z, zp) = zeta_grid()?;
    let mut min_gap = f64::INFINITY;
    let mut c0_dev: f64 = 0.0;
    for (ci, by_r) in z.iter().enumerate() {
        for row in by_r {
            for (ui, v) in row.iter().enumerate() {
                let d = v - zp[ui];
                if ci == 0 {
                    c0_dev = c0_dev.max(d.abs());
                } else {
                    min_gap = min_gap.min(d);
                }
            }
        }
    }
    let ok = min_gap > 0.0 && c0_dev <= 1e-10;
    Ok((
        ok,
        format!("min zeta_M - zeta_P over c>0 = {min_gap:.3e}, max |diff| at c=0 = {c0_dev:.1e}"),
    ))
}

fn criterion2() -> Result<(bool, String)> {
    let (z, _) = zeta_grid()?;
    let mut ok = true;
    for ri in 0..GRID_R.len() {
        for ui in 0..GRID_U.len() {
            for ci in 1..GRID_C.len() {
                ok &= z[ci][ri][ui] > z[ci - 1][ri][ui];
            }
        }
    }
    for ci in 1..GRID_C.len() {
        for ui in 0..GRID_U.len() {
            for ri in 1..GRID_R.len() {
                ok &= z[ci][ri][ui] < z[ci][ri - 1][ui];
            }
        }
    }
    let radio = presets::correlation_radio();
    let f = f_exact(0.1, 100.0, &radio)?;
    let mut gap: f64 = 0.0;
    for &u in &GRID_U {
        let zm = zeta_cluster_with_f(0.1, 100.0, u, f, &radio)?.zeta;
        gap = gap.max(zm - zeta_ppp(u, &radio)?.zeta);
    }
    ok &= gap < 1e-2;
    Ok((
        ok,
        format!(
            "strict monotonicity {}, gap at c=0.1 R=100 = {gap:.2e}",
            if ok { "holds" } else { "checked" }
        ),
    ))
}

fn criterion3() -> Result<(bool, String)> {
    let radio = presets::correlation_radio();
    let mut worst: f64 = 0.0;
    for &(c, r) in &[(3.0, 5.0), (1.0, 10.0)] {
        let mcp = SbsTier::Mcp(MatClusterSpec::new(0.1, c, r)?);
        let socp = SbsTier::Socp(SocpSpec::new(0.01, 10.0, 20.0, 10.0, c, r)?);
        for &u in &[0.0, 2.0] {
            let a = zeta_tier(&mcp, u, &radio)?.zeta;
            let b = zeta_tier(&socp, u, &radio)?.zeta;
            worst = worst.max((a - b).abs());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("max |zeta_MCP - zeta_SOCP| = {worst:.1e}"),
    ))
}

fn criterion4(o: &ValidationOptions) -> Result<(bool, String)> {
    let radio = presets::correlation_radio();
    let tier = presets::correlation_mcp(3.0)?;
    let f = f_exact(3.0, 5.0, &radio)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, &u) in [0.0, 2.0, 5.0].iter().enumerate() {
        let want = zeta_cluster_with_f(3.0, 5.0, u, f, &radio)?.zeta;
        let mc = estimate_zeta_mc(
            &tier,
            u,
            o.zeta_trials,
            crate::rng::derive_seed(o.seed, 400 + k as u64),
            &radio,
        )?;
        let se = mc.stderr.unwrap_or(f64::NAN);
        let z = (mc.zeta - want) / se;
        ok &= z.abs() <= 3.0;
        parts.push(format!("u={u}: {:.4} vs {want:.4} ({z:+.2} se)", mc.zeta));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion5(o: &ValidationOptions) -> Result<(bool, String)> {
    let radio = presets::correlation_radio();
    let want = mean_interference(0.3 * o.lambda_perturbation, &radio);
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, tier) in presets::equal_density_tiers()?.into_iter().enumerate() {
        let mbs = match tier {
            SbsTier::Socp(s) => s.parent_density,
            _ => 0.01,
        };
        let model = HcnModel::new(mbs, tier, radio)?;
        let cfg = SimConfig::new(model, UserClass::Su)
            .with_trials(o.mean_trials)
            .with_seed(crate::rng::derive_seed(o.seed, 500 + k as u64));
        let e = estimate_mean_interference(&cfg, o.mean_probes)?;
        let rel = e.mean / want - 1.0;
        ok &= rel.abs() <= 0.02;
        parts.push(format!(
            "{} {:.3} ({:+.2}%)",
            tier.name(),
            e.mean,
            100.0 * rel
        ));
    }
    Ok((ok, format!("closed form {want:.3}; {}", parts.join(", "))))
}

fn criterion6() -> Result<(bool, String)> {
    let radio = presets::correlation_radio();
    let mut ok = true;
    let mut parts = Vec::new();
    for &r in &[20.0, 50.0, 100.0] {
        let ratio = f_approx(3.0, r, &radio)? / f_exact(3.0, r, &radio)?;
        ok &= (ratio - 1.0).abs() <= 0.10;
        parts.push(format!("R={r}: {ratio:.4}"));
    }
    Ok((ok, format!("approx/exact {}", parts.join(", "))))
}

fn criterion7(o: &ValidationOptions) -> Result<(bool, String)> {
    let betas: Vec<f64> = (-10..=5).map(f64::from).collect();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (k, user) in [UserClass::Mu, UserClass::Su].into_iter().enumerate() {
        let model = presets::jsp_ppp(0.0)?;
        let cfg = SimConfig::new(model, user)
            .with_trials(o.ppp_trials)
            .with_slots(4)
            .with_seed(crate::rng::derive_seed(o.seed, 700 + k as u64));
        for e in simulate_jsp_sweep(&cfg, &betas)? {
            if !matches!(e.n, 1 | 2 | 4) {
                continue;
            }
            let m = presets::jsp_ppp(e.beta_db)?;
            let want = jsp_ppp(e.n, user, &m, true)?.value;
            worst = worst.max((e.estimate - want).abs() / e.half_width().max(1e-12));
            count += 1;
        }
    }
    Ok((
        worst <= 3.0,
        format!("{count} points, worst deviation {worst:.2} half-widths"),
    ))
}

/// Whether the interval of `e` meets [lo, hi].
fn meets(e: &JspEstimate, lo: f64, hi: f64) -> bool {
    e.ci_high >= lo && e.ci_low <= hi
}

fn criterion8(o: &ValidationOptions) -> Result<(bool, String)> {
    let betas = [-10.0, -5.0, 0.0, 5.0];
    let mut ok = true;
    let mut checked = 0;
    let mut misses = Vec::new();
    let builders: [fn(f64) -> Result<HcnModel>; 2] = [presets::jsp_mcp, presets::jsp_socp];
    for (k, build) in builders.iter().enumerate() {
        for (j, user) in [UserClass::Mu, UserClass::Su].into_iter().enumerate() {
            let cfg = SimConfig::new(build(0.0)?, user)
                .with_trials(o.bound_trials)
                .with_slots(2)
                .with_seed(crate::rng::derive_seed(
                    o.seed,
                    800 + 10 * k as u64 + j as u64,
                ));
            for e in simulate_jsp_sweep(&cfg, &betas)? {
                let (lo, hi) = jsp_bounds(e.n, user, &build(e.beta_db)?)?;
                checked += 1;
                if !meets(&e, lo, hi) {
                    ok = false;
                    misses.push(format!(
                        "{} {} n={} beta={}",
                        e.model,
                        user.name(),
                        e.n,
                        e.beta_db
                    ));
                }
            }
        }
    }
    let detail = if misses.is_empty() {
        format!("{checked} estimates inside their bounds")
    } else {
        format!("outside: {}", misses.join(", "))
    };
    Ok((ok, detail))
}

fn criterion9(o: &ValidationOptions) -> Result<(bool, String)> {
    let betas = [-5.0, 0.0, 5.0];
    let models = presets::ordering_chain(0.0)?;
    let mut runs = Vec::new();
    for (k, m) in models.iter().enumerate() {
        let cfg = SimConfig::new(*m, UserClass::Mu)
            .with_trials(o.chain_trials)
            .with_slots(1)
            .with_seed(crate::rng::derive_seed(o.seed, 900 + k as u64));
        runs.push(simulate_jsp_sweep(&cfg, &betas)?);
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for b in 0..betas.len() {
        let (p, m, s) = (&runs[0][b], &runs[1][b], &runs[2][b]);
        ok &= p.ci_low <= m.ci_high && m.ci_low <= s.ci_high;
        parts.push(format!(
            "beta={}: {:.4} <= {:.4} <= {:.4}",
            betas[b], p.estimate, m.estimate, s.estimate
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn retrans(
    o: &ValidationOptions,
    c: f64,
    scheme: SchemeDescriptor,
    k: u64,
) -> Result<RetransEstimate> {
    let cfg = SimConfig::new(presets::retrans_mcp(c)?, UserClass::Su)
        .with_trials(o.retrans_trials)
        .with_slots(o.retrans_slots)
        .with_seed(crate::rng::derive_seed(o.seed, 1000 + k))
        .with_scheme(scheme);
    simulate_retransmission(&cfg)
}

fn criterion10(o: &ValidationOptions) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut gaps = Vec::new();
    let hw = |e: &RetransEstimate| 0.5 * (e.ci_high - e.ci_low);
    for (k, &c) in [2.0, 4.0, 6.0].iter().enumerate() {
        // one seed per c so all schemes see the same networks and fading
        let s = retrans(o, c, SchemeDescriptor::Simple, k as u64)?;
        let r = retrans(o, c, SchemeDescriptor::RandomP { p: 0.5 }, k as u64)?;
        let a = retrans(o, c, SchemeDescriptor::correlation_aware(), k as u64)?;
        let r1 = retrans(o, c, SchemeDescriptor::RandomP { p: 1.0 }, k as u64)?;
        let order = a.ci_high >= r.ci_low && r.ci_high >= s.ci_low;
        let same = r1.successes == s.successes && r1.attempts == s.attempts;
        ok &= order && same;
        gaps.push((a.success_prob - s.success_prob, hw(&a) + hw(&s)));
        parts.push(format!(
            "c={c}: aware {:.4} random {:.4} simple {:.4}{}",
            a.success_prob,
            r.success_prob,
            s.success_prob,
            if same {
                ""
            } else {
                " (p=1 differs from simple)"
            }
        ));
    }
    for w in gaps.windows(2) {
        ok &= w[1].0 + w[1].1 >= w[0].0 - w[0].1;
    }
    Ok((ok, parts.join("; ")))
}

fn criterion11() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_gamma: f64 = 0.0;
    for _ in 0..200 {
        let x = rng.random_range(0.5..10.0);
        let rel = gamma_fn(x + 1.0)? / (x * gamma_fn(x)?) - 1.0;
        worst_gamma = worst_gamma.max(rel.abs());
    }
    let mut worst_atan: f64 = 0.0;
    for k in 1..=300 {
        let z = 3.0 * k as f64 / 300.0;
        let rel = hyp2f1(1.0, 0.5, 1.5, -z * z)? * z / z.atan() - 1.0;
        worst_atan = worst_atan.max(rel.abs());
    }
    let radial = integrate_1d(
        |r| r / (r.powi(4) + 0.01),
        0.0,
        f64::INFINITY,
        &QuadratureSpec::default(),
    )?
    .value;
    let radial_err = (radial - 7.853_981_6).abs();
    let ok = worst_gamma <= 1e-10 && worst_atan <= 1e-8 && radial_err < 1e-7;
    Ok((
        ok,
        format!("gamma recurrence {worst_gamma:.1e}, arctan identity {worst_atan:.1e}, radial integral {radial:.8}"),
    ))
}

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: u32, o: &ValidationOptions) -> Outcome {
    let start = Instant::now();
    let res = match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(o),
        5 => criterion5(o),
        6 => criterion6(),
        7 => criterion7(o),
        8 => criterion8(o),
        9 => criterion9(o),
        10 => criterion10(o),
        11 => criterion11(),
        _ => Ok((false, format!("unknown criterion {id}"))),
    };
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown", |c| c.1);
    Outcome {
        id,
        title,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(o: &ValidationOptions) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_criterion(c.0, o)).collect()
}
