// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line surface and the glue that turns flags into runs.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use apts_core::{synth, AptsConfig, MultiSeries};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{load_series, load_weights, Format};
use crate::report::RunReport;
use crate::runner::{bench_scaling, render_table, run_once, run_repeated, Algorithm};
use crate::svg;

#[derive(Debug, Parser)]
#[command(
    name = "apts",
    version,
    about = "Trading-inspired time series segmentation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment one series and write a report.
    Run(RunArgs),
    /// Time the algorithms over growing channel counts.
    Scaling(ScalingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Example1,
    Example2,
    Figure1,
    Noisy,
    Plateau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoName {
    Apts,
    Bu,
    Ggs,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Read the series from a file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// File format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// UCR rows to stack as channels (default: all).
    #[arg(long, value_delimiter = ',')]
    pub ucr_rows: Vec<usize>,
    /// Use a built-in synthetic series.
    #[arg(long, value_enum)]
    pub gen: Option<Generator>,
    /// Base curve for `--gen noisy`.
    #[arg(long, value_enum, default_value = "example1")]
    pub base: Generator,
    /// Number of noisy replicas.
    #[arg(long, default_value_t = 100)]
    pub replicas: usize,
    /// Resample the first example to this many points.
    #[arg(long)]
    pub length: Option<usize>,
    /// Noise level: Gaussian standard deviation for `noisy` (default 0.2),
    /// uniform half-width on plateaus for `plateau` (default 0.015).
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct AlgoArgs {
    #[arg(long, value_enum, default_value = "apts")]
    pub algo: AlgoName,
    /// Breakpoint count for bu and ggs.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = apts_core::baselines::DEFAULT_LAMBDA)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.01)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eps_max: f64,
    #[arg(long, default_value_t = 2.0)]
    pub gamma_mult: f64,
    /// Merge distance; defaults to max(0.01 T, 2).
    #[arg(long)]
    pub gamma_close: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub gamma_plat: f64,
    #[arg(long, default_value_t = 10)]
    pub k_max: usize,
    /// Channel weights, comma or whitespace separated.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub algo: AlgoArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Repeat the run and report min and median times.
    #[arg(long)]
    pub bench: bool,
    #[arg(long, default_value_t = 10)]
    pub repeat: usize,
    /// Worker threads for per-channel parallelism (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ScalingArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "apts,bu,ggs")]
    pub algo: Vec<AlgoName>,
    #[arg(long, value_delimiter = ',', default_value = "1,10,50,100")]
    pub channels: Vec<usize>,
    /// Points per channel.
    #[arg(long, default_value_t = 427)]
    pub length: usize,
    #[arg(long, default_value_t = 0.2)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = apts_core::baselines::DEFAULT_LAMBDA)]
    pub lambda: f64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn generate(src: &SourceArgs, which: Generator) -> Result<MultiSeries> {
    let example1 = || match src.length {
        Some(n) => synth::example1_stretched(n),
        None => synth::example1(),
    };
    Ok(match which {
        Generator::Example1 => example1(),
        Generator::Example2 => synth::example2(),
        Generator::Figure1 => synth::figure1(),
        Generator::Plateau => synth::ramps_and_plateaus(src.sigma.unwrap_or(0.015), src.seed),
        Generator::Noisy => {
            let base = match src.base {
                Generator::Example1 => example1(),
                Generator::Example2 => synth::example2(),
                other => bail!("--base must be example1 or example2, not {other:?}"),
            };
            if src.replicas == 0 {
                bail!("--replicas must be at least 1");
            }
            let sigma = src.sigma.unwrap_or(0.2);
            if !(sigma.is_finite() && sigma >= 0.0) {
                bail!("--sigma must be nonnegative");
            }
            synth::noisy_replicas(&base, src.replicas, sigma, src.seed)
        }
    })
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

/// Loads or generates the series and a descriptor plus the arguments that
/// reproduce it.
pub fn resolve_source(src: &SourceArgs) -> Result<(MultiSeries, String, Vec<String>)> {
    if let Some(path) = &src.input {
        let format = src.format.unwrap_or_else(|| Format::from_path(path));
        let series = load_series(path, format, &src.ucr_rows)
            .with_context(|| format!("loading {}", path.display()))?;
        let mut args = vec![
            "--input".into(),
            path.display().to_string(),
            "--format".into(),
            value_name(format),
        ];
        if !src.ucr_rows.is_empty() {
            args.push("--ucr-rows".into());
            args.push(
                src.ucr_rows
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        return Ok((series, format!("file:{}", path.display()), args));
    }
    let which = src.gen.context("either --input or --gen is required")?;
    let series = generate(src, which)?;
    let mut args = vec!["--gen".into(), value_name(which)];
    if let Some(n) = src.length {
        args.extend(["--length".into(), n.to_string()]);
    }
    match which {
        Generator::Noisy => args.extend([
            "--base".into(),
            value_name(src.base),
            "--replicas".into(),
            src.replicas.to_string(),
            "--sigma".into(),
            src.sigma.unwrap_or(0.2).to_string(),
            "--seed".into(),
            src.seed.to_string(),
        ]),
        Generator::Plateau => args.extend([
            "--sigma".into(),
            src.sigma.unwrap_or(0.015).to_string(),
            "--seed".into(),
            src.seed.to_string(),
        ]),
        _ => {}
    }
    Ok((series, format!("gen:{}", value_name(which)), args))
}

/// Builds the algorithm and the arguments that reproduce its configuration.
pub fn resolve_algorithm(a: &AlgoArgs) -> Result<(Algorithm, Vec<String>)> {
    let mut args = vec!["--algo".into(), value_name(a.algo)];
    let algo = match a.algo {
        AlgoName::Apts => {
            let weights = a
                .weights
                .as_ref()
                .map(|p| load_weights(p).with_context(|| format!("loading {}", p.display())))
                .transpose()?;
            let cfg = AptsConfig {
                eps_min: a.eps_min,
                eps_max: a.eps_max,
                gamma_mult: a.gamma_mult,
                gamma_close: a.gamma_close,
                gamma_plat: a.gamma_plat,
                k_max: a.k_max,
                weights,
            };
            cfg.validate()?;
            args.extend([
                "--eps-min".into(),
                a.eps_min.to_string(),
                "--eps-max".into(),
                a.eps_max.to_string(),
                "--gamma-mult".into(),
                a.gamma_mult.to_string(),
                "--gamma-plat".into(),
                a.gamma_plat.to_string(),
                "--k-max".into(),
                a.k_max.to_string(),
            ]);
            if let Some(g) = a.gamma_close {
                args.extend(["--gamma-close".into(), g.to_string()]);
            }
            if let Some(p) = &a.weights {
                args.extend(["--weights".into(), p.display().to_string()]);
            }
            Algorithm::Apts(cfg)
        }
        AlgoName::Bu => {
            let k = a.k.context("--k is required for bu")?;
            args.extend(["--k".into(), k.to_string()]);
            Algorithm::Bu { k }
        }
        AlgoName::Ggs => {
            let k = a.k.context("--k is required for ggs")?;
            args.extend([
                "--k".into(),
                k.to_string(),
                "--lambda".into(),
                a.lambda.to_string(),
            ]);
            Algorithm::Ggs {
                k,
                lambda: a.lambda,
            }
        }
    };
    Ok((algo, args))
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building thread pool")?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Executes `apts run` and returns the report; files requested by `--svg`
/// are written, the report itself is left to the caller.
pub fn execute_run(args: &RunArgs) -> Result<RunReport> {
    let (series, source, mut echo) = resolve_source(&args.source)?;
    let (algo, algo_args) = resolve_algorithm(&args.algo)?;
    echo.extend(algo_args);

    let (outcome, timing) = with_threads(args.threads, || -> apts_core::Result<_> {
        if args.bench {
            let (o, t) = run_repeated(&series, &algo, args.repeat)?;
            Ok((o, Some(t)))
        } else {
            Ok((run_once(&series, &algo)?, None))
        }
    })??;

    if let Some(path) = &args.svg {
        let title = format!("{} on {source}", algo.name());
        fs::write(path, svg::render(&series, &outcome.breakpoints, &title))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut extra = std::collections::BTreeMap::new();
    if let Some(n) = args.threads {
        extra.insert("threads".to_string(), n.to_string());
    }
    Ok(RunReport {
        algo: algo.name().into(),
        source,
        n_x: series.n_channels(),
        horizon: series.horizon(),
        breakpoints: outcome.breakpoints,
        epsilons: outcome.epsilons,
        seconds: outcome.seconds,
        timing,
        args: echo,
        extra,
    })
}

pub fn execute_scaling(args: &ScalingArgs) -> Result<String> {
    if args.length < 2 {
        bail!("--length must be at least 2");
    }
    let base = synth::example1_stretched(args.length);
    let algos: Vec<Algorithm> = args
        .algo
        .iter()
        .map(|a| match a {
            AlgoName::Apts => Algorithm::Apts(AptsConfig::default()),
            AlgoName::Bu => Algorithm::Bu { k: args.k },
            AlgoName::Ggs => Algorithm::Ggs {
                k: args.k,
                lambda: args.lambda,
            },
        })
        .collect();
    let rows = with_threads(args.threads, || {
        bench_scaling(
            &base,
            &args.channels,
            &algos,
            args.repeat,
            args.sigma,
            args.seed,
        )
    })??;
    Ok(render_table(&rows))
}

pub fn main_with(cli: Cli) -> Result<()> {
    let (text, out) = match &cli.command {
        Command::Run(a) => (execute_run(a)?.render(), &a.out),
        Command::Scaling(a) => (execute_scaling(a)?, &a.out),
    };
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<RunReport> {
        let cli = Cli::try_parse_from(["apts", "run"].iter().chain(args))?;
        match cli.command {
            Command::Run(a) => execute_run(&a),
            _ => unreachable!(),
        }
    }

    #[test]
    fn example1_through_flags() {
        let r = run(&["--gen", "example1"]).unwrap();
        assert_eq!(r.breakpoints, vec![16, 33, 50, 66, 83]);
        assert_eq!((r.n_x, r.horizon), (1, 99));
    }

    #[test]
    fn echo_reproduces_run() {
        let first = run(&[
            "--gen",
            "noisy",
            "--replicas",
            "4",
            "--seed",
            "9",
            "--k-max",
            "6",
        ])
        .unwrap();
        let echo: Vec<&str> = first.args.iter().map(String::as_str).collect();
        let again = run(&echo).unwrap();
        assert_eq!(first.breakpoints, again.breakpoints);
        assert_eq!(first.args, again.args);
    }

    #[test]
    fn baselines_need_k() {
        assert!(run(&["--gen", "example1", "--algo", "bu"]).is_err());
        assert_eq!(
            run(&["--gen", "example1", "--algo", "ggs", "--k", "2"])
                .unwrap()
                .breakpoints
                .len(),
            2
        );
    }

    #[test]
    fn source_is_required() {
        assert!(Cli::try_parse_from(["apts", "run"]).is_err());
        assert!(
            Cli::try_parse_from(["apts", "run", "--gen", "example1", "--input", "x.csv"]).is_err()
        );
    }
}
