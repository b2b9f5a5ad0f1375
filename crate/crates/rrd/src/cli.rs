//! Command-line front end.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rrd_core::decompound::{corrected_estimator, default_truncation, CorrectionCoeffs};
use rrd_core::rng::replicate_seed;
use rrd_core::simulate::{discretize, sample_path};

use crate::config::ExperimentConfig;
use crate::emit::{emit, report_csv, Formats};
use crate::harness::run_experiment;
use crate::{io, HarnessError};

#[derive(Debug, Parser)]
#[command(
    name = "rrd",
    version,
    about = "Jump density estimation for renewal reward processes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one path and write it, or its increments, as CSV.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "increments")]
        kind: DumpKind,
    },
    /// Estimate the jump density from an increments CSV.
    Estimate {
        #[command(flatten)]
        common: Common,
        /// `i,increment` file as written by `simulate`.
        #[arg(long)]
        input: PathBuf,
        /// Correction order; 0 gives the naive estimator.
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Print the p_m and l_m tables at the configured parameter and delta.
    Coeffs {
        #[command(flatten)]
        common: Common,
        /// Correction order; defaults to the largest entry of k_list.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Run the Monte Carlo experiment and write its report.
    Experiment {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `output_dir` from the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides `base_seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides `replicates`.
    #[arg(long)]
    pub replicates: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpKind {
    /// `t,jump`
    Path,
    /// `i,increment`
    Increments,
}

impl Common {
    fn load(&self) -> Result<ExperimentConfig, HarnessError> {
        let mut cfg = ExperimentConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            cfg.base_seed = seed;
        }
        if let Some(r) = self.replicates {
            cfg.replicates = r;
        }
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, HarnessError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| HarnessError::io(path, e))
}

pub fn run<W: Write>(cli: Cli, stdout: &mut W) -> Result<(), HarnessError> {
    let out_err = |e: std::io::Error| HarnessError::io(std::path::Path::new("<stdout>"), e);
    match cli.command {
        Command::Simulate { common, kind } => {
            let cfg = common.load()?;
            let seed = replicate_seed(cfg.base_seed, 0);
            let path = sample_path(&cfg.model()?, &cfg.mixture()?, cfg.horizon, seed)?;
            let target = match kind {
                DumpKind::Path => {
                    let target = cfg.output_dir.join("path.csv");
                    io::write_path(&path, create(&target)?)?;
                    target
                }
                DumpKind::Increments => {
                    let target = cfg.output_dir.join("increments.csv");
                    io::write_increments(&discretize(&path, cfg.delta)?, create(&target)?)?;
                    target
                }
            };
            writeln!(stdout, "{}", target.display()).map_err(out_err)?;
        }
        Command::Estimate { common, input, k } => {
            let cfg = common.load()?;
            let file = File::open(&input).map_err(|e| HarnessError::io(&input, e))?;
            let series = io::read_increments(BufReader::new(file), cfg.delta)?;
            let wavelet = cfg.wavelet_config()?;
            let fit = corrected_estimator(&series, &cfg.model()?, k, &wavelet, cfg.horizon)?;
            if let Some(t) = fit.theta {
                if t.clamped {
                    log::warn!("fitted parameter {} clamped to {}", t.raw, t.value);
                }
                log::info!(
                    "fitted parameter {} from nonzero fraction {}",
                    t.value,
                    t.nonzero_fraction
                );
            }
            let target = cfg.output_dir.join(format!("estimate_k{k}.csv"));
            io::write_density(&fit.estimate, create(&target)?)?;
            writeln!(stdout, "{}", target.display()).map_err(out_err)?;
        }
        Command::Coeffs {
            common,
            k,
            truncation,
        } => {
            let cfg = common.load()?;
            let model = cfg.model()?;
            let k = k.unwrap_or_else(|| cfg.k_list.iter().copied().max().unwrap_or(0));
            let m = truncation.unwrap_or_else(|| default_truncation(&model, cfg.delta).max(k + 1));
            let c = CorrectionCoeffs::with_truncation(&model, cfg.delta, k, m)?;
            let mut table = String::from("m,p,l\n");
            for (i, p) in c.p.iter().enumerate() {
                let l = c.l.get(i).map(f64::to_string).unwrap_or_default();
                table.push_str(&format!("{},{p},{l}\n", i + 1));
            }
            stdout.write_all(table.as_bytes()).map_err(out_err)?;
            if common.out.is_some() {
                let target = cfg.output_dir.join("coeffs.csv");
                let mut f = create(&target)?;
                f.write_all(table.as_bytes())
                    .map_err(|e| HarnessError::io(&target, e))?;
            }
        }
        Command::Experiment { common } => {
            let cfg = common.load()?;
            let report = run_experiment(&cfg)?;
            emit(&report, &cfg.output_dir, Formats::default())?;
            stdout
                .write_all(report_csv(&report).as_bytes())
                .map_err(out_err)?;
            log::info!("wall clock {:.3} s", report.wall_clock.as_secs_f64());
        }
    }
    Ok(())
}
