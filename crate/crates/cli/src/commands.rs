//! CSV producers behind each subcommand. Every sweep cell draws from its
//! own derived seed, so output does not depend on the thread count.

use std::io::Write;

use anyhow::{bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hcncorr::correlation::{
    estimate_zeta_mc, f_approx, f_exact, zeta_cluster_approx, zeta_cluster_with_f, zeta_ppp,
};
use hcncorr::csvfmt::g9;
use hcncorr::geometry::{sample_ppp, socp_from_parents, PointPattern, Tier, Window};
use hcncorr::jsp::{jsp, jsp_bounds, jsp_ppp};
use hcncorr::rng::derive_seed;
use hcncorr::simkit::{
    simulate_jsp_sweep, simulate_retransmission, SchemeDescriptor, SimConfig, RETRANS_HEADER,
};
use hcncorr::validation::{run_criterion, ValidationOptions, CRITERIA};
use hcncorr::{correlation::sample_tier, SbsTier, UserClass};

use crate::config::Config;

/// Analytic value with optional lower and upper bounds.
type Analytic = (f64, Option<f64>, Option<f64>);
/// Simulated estimate with its interval.
type Simulated = (f64, f64, f64);

fn opt(x: Option<f64>) -> String {
    x.map(g9).unwrap_or_default()
}

/// ζ_P, ζ_M (exact F and large-R F) and the simulated ζ for a Matérn tier
/// over c × R × u.
pub fn zeta_sweep(cfg: &Config) -> Result<Vec<u8>> {
    let radio = cfg.radio()?;
    let cells: Vec<(usize, f64, f64)> = cfg
        .c_grid
        .iter()
        .flat_map(|&c| cfg.R_grid.iter().map(move |&r| (c, r)))
        .enumerate()
        .map(|(k, (c, r))| (k, c, r))
        .collect();
    let blocks: Vec<Result<String>> = cells
        .par_iter()
        .map(|&(k, c, r)| {
            let f = f_exact(c, r, &radio)?;
            let tier = SbsTier::Mcp(hcncorr::geometry::MatClusterSpec::new(cfg.lambda_M0, c, r)?);
            let mut s = String::new();
            for (j, &u) in cfg.u_grid.iter().enumerate() {
                let zp = zeta_ppp(u, &radio)?.zeta;
                let ze = zeta_cluster_with_f(c, r, u, f, &radio)?.zeta;
                let za = zeta_cluster_approx(c, r, u, &radio)?.zeta;
                let (mc, se) = if cfg.zeta_mc && c > 0.0 {
                    let seed = derive_seed(cfg.seed, (k * cfg.u_grid.len() + j) as u64);
                    let m = estimate_zeta_mc(&tier, u, cfg.trials, seed, &radio)?;
                    (Some(m.zeta), m.stderr)
                } else {
                    (None, None)
                };
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    g9(c),
                    g9(r),
                    g9(u),
                    g9(zp),
                    g9(ze),
                    g9(za),
                    opt(mc),
                    opt(se)
                );
            }
            Ok(s)
        })
        .collect();
    let mut out = b"c,R,u,zeta_ppp,zeta_exact,zeta_approx,zeta_mc,mc_stderr\n".to_vec();
    for b in blocks {
        out.extend(b?.into_bytes());
    }
    Ok(out)
}

/// F by quadrature and by its large-R form over c × R.
pub fn f_table(cfg: &Config) -> Result<Vec<u8>> {
    let radio = cfg.radio()?;
    let cells: Vec<(f64, f64)> = cfg
        .c_grid
        .iter()
        .flat_map(|&c| cfg.R_grid.iter().map(move |&r| (c, r)))
        .collect();
    let rows: Vec<Result<String>> = cells
        .par_iter()
        .map(|&(c, r)| {
            let fe = f_exact(c, r, &radio)?;
            let fa = f_approx(c, r, &radio)?;
            let ratio = if fe > 0.0 { Some(fa / fe) } else { None };
            Ok(format!(
                "{},{},{},{},{}\n",
                g9(c),
                g9(r),
                g9(fe),
                g9(fa),
                opt(ratio)
            ))
        })
        .collect();
    let mut out = b"c,R,f_exact,f_approx,ratio\n".to_vec();
    for r in rows {
        out.extend(r?.into_bytes());
    }
    Ok(out)
}

fn at_beta(cfg: &Config, beta_db: f64) -> Config {
    Config {
        beta_m_db: beta_db,
        beta_s_db: beta_db,
        ..cfg.clone()
    }
}

fn sim_config(cfg: &Config, model: hcncorr::HcnModel, user: UserClass, cell: u64) -> SimConfig {
    let mut s = SimConfig::new(model, user)
        .with_trials(cfg.trials)
        .with_slots(cfg.slots)
        .with_seed(derive_seed(cfg.seed, cell))
        .with_shared_parents(cfg.shared_parents)
        .with_far_field(cfg.far_field);
    if let Some(w) = cfg.window_radius() {
        s = s.with_window(w);
    }
    s
}

/// Analytic value, PPP bounds and simulation over β × model × user × n.
pub fn jsp_table(cfg: &Config) -> Result<Vec<u8>> {
    if cfg.slots == 0 {
        bail!("slots must be at least 1");
    }
    let users = cfg.user_classes()?;
    let pgfl = cfg.pgfl()?;
    let pairs: Vec<(UserClass, String)> = users
        .iter()
        .flat_map(|&u| cfg.models.iter().map(move |m| (u, m.clone())))
        .collect();
    let analytic: Vec<Result<Vec<Analytic>>> = pairs
        .par_iter()
        .flat_map(|(u, m)| {
            cfg.beta_grid_db
                .par_iter()
                .map(move |&b| (*u, m.clone(), b))
        })
        .map(|(u, m, b)| {
            let model = at_beta(cfg, b).model(&m)?;
            (1..=cfg.slots)
                .map(|n| {
                    Ok(match model.sbs {
                        SbsTier::Ppp { .. } => {
                            (jsp_ppp(n, u, &model, cfg.exact_d)?.value, None, None)
                        }
                        _ => {
                            let r = jsp(n, u, &model, &pgfl)?;
                            (r.value, r.lower, r.upper)
                        }
                    })
                })
                .collect()
        })
        .collect();
    let mc: Vec<Result<Option<Vec<Simulated>>>> = pairs
        .iter()
        .enumerate()
        .map(|(k, (u, m))| {
            if cfg.trials == 0 {
                return Ok(None);
            }
            let sc = sim_config(cfg, cfg.model(m)?, *u, k as u64);
            let est = simulate_jsp_sweep(&sc, &cfg.beta_grid_db)?;
            Ok(Some(
                est.iter()
                    .map(|e| (e.estimate, e.ci_low, e.ci_high))
                    .collect(),
            ))
        })
        .collect();
    let mut out = Vec::new();
    writeln!(
        out,
        "user,model,n,beta_db,analytic,lower,upper,mc,mc_low,mc_high"
    )?;
    let ns = cfg.slots as usize;
    let mut analytic = analytic.into_iter();
    let mc = mc.into_iter().collect::<Result<Vec<_>>>()?;
    for (k, (u, m)) in pairs.iter().enumerate() {
        for (bi, &b) in cfg.beta_grid_db.iter().enumerate() {
            let rows = analytic
                .next()
                .expect("one analytic cell per (pair, beta)")?;
            for (ni, (v, lo, hi)) in rows.into_iter().enumerate() {
                let sim = mc[k].as_ref().map(|e| e[bi * ns + ni]);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    u.name(),
                    m,
                    ni + 1,
                    g9(b),
                    g9(v),
                    opt(lo),
                    opt(hi),
                    opt(sim.map(|s| s.0)),
                    opt(sim.map(|s| s.1)),
                    opt(sim.map(|s| s.2))
                )?;
            }
        }
    }
    Ok(out)
}

/// PPP lower and upper bounds alone, over β × model × user × n.
pub fn bounds(cfg: &Config) -> Result<Vec<u8>> {
    let users = cfg.user_classes()?;
    let mut out = Vec::new();
    writeln!(out, "user,model,n,beta_db,lower,upper")?;
    for &u in &users {
        for m in &cfg.models {
            for &b in &cfg.beta_grid_db {
                let model = at_beta(cfg, b).model(m)?;
                for n in 1..=cfg.slots {
                    let (lo, hi) = jsp_bounds(n, u, &model)?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        u.name(),
                        m,
                        n,
                        g9(b),
                        g9(lo),
                        g9(hi)
                    )?;
                }
            }
        }
    }
    Ok(out)
}

/// Simple, RandomP(p), RandomP(1) and the correlation-aware scheme for a
/// Matérn tier of fixed density λ_p and c nodes per cluster, over c.
pub fn retrans(cfg: &Config) -> Result<Vec<u8>> {
    let schemes = [
        SchemeDescriptor::Simple,
        SchemeDescriptor::RandomP { p: cfg.p_random },
        SchemeDescriptor::RandomP { p: 1.0 },
        cfg.correlation_aware(),
    ];
    for s in &schemes {
        s.validate()?;
    }
    let cells: Vec<(usize, f64, SchemeDescriptor)> = cfg
        .c_grid
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| schemes.iter().map(move |s| (k, c, *s)))
        .collect();
    let rows: Vec<Result<String>> = cells
        .iter()
        .map(|&(k, c, scheme)| {
            if !(c > 0.0) {
                bail!("cluster size in c_grid must be positive, got {c}");
            }
            let model = Config {
                lambda_M0: cfg.lambda_p / c,
                c_M: c,
                ..cfg.clone()
            }
            .model("MCP")?;
            // the schemes at one c share networks and fading
            let sc = sim_config(cfg, model, UserClass::Su, k as u64).with_scheme(scheme);
            let mut buf = Vec::new();
            simulate_retransmission(&sc)?.write_row(&mut buf)?;
            Ok(String::from_utf8(buf)?)
        })
        .collect();
    let mut out = format!("{RETRANS_HEADER}\n").into_bytes();
    for r in rows {
        out.extend(r?.into_bytes());
    }
    Ok(out)
}

/// One realization of the MBS tier and the first configured small-cell tier.
pub fn sample(cfg: &Config) -> Result<Vec<u8>> {
    let name = cfg.models.first().map(String::as_str).unwrap_or("MCP");
    let model = cfg.model(name)?;
    let radius = cfg.window_radius().unwrap_or(1000.0);
    let window = Window::centered(radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reach = model.sbs.cluster_reach();
    let mbs_all = sample_ppp(
        model.mbs_density,
        &window.dilated(reach),
        Tier::Mbs,
        &mut rng,
    )?;
    let sbs = match model.sbs {
        SbsTier::Socp(spec) if cfg.shared_parents => {
            socp_from_parents(&spec, mbs_all.positions().collect(), &window, &mut rng)
        }
        tier => sample_tier(&tier, &window, &mut rng)?,
    };
    let mut pp = PointPattern {
        sites: mbs_all
            .sites
            .into_iter()
            .filter(|s| window.contains(s.pos))
            .collect(),
        ..Default::default()
    };
    pp.extend(sbs);
    let mut out = Vec::new();
    pp.write_csv(&mut out)?;
    Ok(out)
}

/// Runs the acceptance criteria; returns the report and whether all passed.
///
/// Timings go to stderr only so that the report itself is reproducible.
pub fn validate(opts: &ValidationOptions, only: &[u32]) -> Result<(Vec<u8>, bool)> {
    let ids: Vec<u32> = if only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    let mut out = Vec::new();
    writeln!(out, "criterion,status,title,detail")?;
    let mut all = true;
    for id in ids {
        let o = run_criterion(id, opts);
        eprintln!("{}", o.line());
        all &= o.passed;
        writeln!(
            out,
            "{},{},{},\"{}\"",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.title,
            o.detail.replace('"', "'")
        )?;
    }
    Ok((out, all))
}
