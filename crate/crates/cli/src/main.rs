//! `hcncorr` command-line front end.

mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hcncorr::validation::ValidationOptions;

use config::Config;

#[derive(Parser, Debug)]
#[command(
    name = "hcncorr",
    version,
    about = "Interference correlation and joint success in clustered two-tier networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,
    /// JSON config file overriding the command's preset.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Output file; a `<out>.manifest.json` is written next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Override one config key, e.g. `--set c_M=5`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Re-run the command recorded in a manifest and check the digests.
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum Cmd {
    /// Correlation coefficient versus probe separation.
    ZetaSweep,
    /// Exact and approximate cluster term F(c, R).
    FTable,
    /// Joint success probability: analytic, bounds and simulation.
    Jsp,
    /// PPP lower and upper bounds on the joint success probability.
    Bounds,
    /// Retransmission scheme comparison over the cluster size.
    Retrans,
    /// Point pattern of one network realization.
    Sample,
    /// Run the acceptance checks.
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Clone, Serialize, Deserialize, PartialEq)]
struct ValidateArgs {
    /// Scale the density fed to the mean-interference closed form.
    #[arg(long, default_value_t = 1.0)]
    lambda_perturbation: f64,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::ZetaSweep => "zeta-sweep",
            Cmd::FTable => "f-table",
            Cmd::Jsp => "jsp",
            Cmd::Bounds => "bounds",
            Cmd::Retrans => "retrans",
            Cmd::Sample => "sample",
            Cmd::Validate(_) => "validate",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct OutputDigest {
    path: String,
    sha256: String,
}

/// Everything needed to reproduce one output file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
struct RunManifest {
    command: Cmd,
    config: Config,
    seed: u64,
    tool_version: String,
    threads: Option<usize>,
    wall_seconds: f64,
    outputs: Vec<OutputDigest>,
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn resolve(cli: &Cli, cmd: &Cmd) -> Result<Config> {
    let mut cfg = config::preset(cmd.name());
    if let Some(p) = &cli.config {
        let text =
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        cfg = config::overlay_json(&cfg, &text).with_context(|| format!("in {}", p.display()))?;
    }
    cfg = config::overlay_sets(&cfg, &cli.sets)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    Ok(cfg)
}

/// Produces the output bytes and whether the run counts as a success.
fn execute(cmd: &Cmd, cfg: &Config) -> Result<(Vec<u8>, bool)> {
    let bytes = match cmd {
        Cmd::ZetaSweep => commands::zeta_sweep(cfg)?,
        Cmd::FTable => commands::f_table(cfg)?,
        Cmd::Jsp => commands::jsp_table(cfg)?,
        Cmd::Bounds => commands::bounds(cfg)?,
        Cmd::Retrans => commands::retrans(cfg)?,
        Cmd::Sample => commands::sample(cfg)?,
        Cmd::Validate(a) => {
            let opts = ValidationOptions {
                seed: cfg.seed,
                lambda_perturbation: a.lambda_perturbation,
                ..Default::default()
            };
            return commands::validate(&opts, &a.only);
        }
    };
    Ok((bytes, true))
}

fn emit(
    cmd: &Cmd,
    cfg: &Config,
    out: Option<&Path>,
    threads: Option<usize>,
) -> Result<(RunManifest, bool)> {
    let start = Instant::now();
    let (bytes, ok) = execute(cmd, cfg)?;
    let path = match out {
        Some(p) => {
            std::fs::write(p, &bytes).with_context(|| format!("writing {}", p.display()))?;
            p.display().to_string()
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
            "-".to_string()
        }
    };
    let manifest = RunManifest {
        command: cmd.clone(),
        config: cfg.clone(),
        seed: cfg.seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        threads,
        wall_seconds: start.elapsed().as_secs_f64(),
        outputs: vec![OutputDigest {
            path,
            sha256: sha256_hex(&bytes),
        }],
    };
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    match out {
        Some(p) => std::fs::write(manifest_path(p), text)?,
        None => eprint!("{text}"),
    }
    Ok((manifest, ok))
}

fn replay(cli: &Cli, path: &Path) -> Result<bool> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let old: RunManifest = serde_json::from_str(&text).context("not a run manifest")?;
    let recorded = old.outputs.first().context("manifest lists no outputs")?;
    let out = match &cli.out {
        Some(p) => Some(p.clone()),
        None if recorded.path != "-" => Some(PathBuf::from(&recorded.path)),
        None => None,
    };
    let (new, ok) = emit(&old.command, &old.config, out.as_deref(), old.threads)?;
    if new.outputs[0].sha256 != recorded.sha256 {
        bail!(
            "replay digest {} differs from recorded {}",
            new.outputs[0].sha256,
            recorded.sha256
        );
    }
    eprintln!("replay matches recorded digest {}", recorded.sha256);
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    if let Some(m) = &cli.replay {
        return replay(&cli, m);
    }
    let Some(cmd) = cli.command.clone() else {
        bail!("no subcommand given (try --help)");
    };
    let cfg = resolve(&cli, &cmd)?;
    let (_, ok) = emit(&cmd, &cfg, cli.out.as_deref(), cli.threads)?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
