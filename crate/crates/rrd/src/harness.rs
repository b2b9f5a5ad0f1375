//! Monte Carlo runner: every estimator is evaluated on the same simulated
//! path per replicate, and errors are folded in replicate order.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use rrd_core::decompound::{
    corrected_estimator, count_probs, default_truncation, naive_estimator, oracle_estimator,
};
use rrd_core::rng::replicate_seed;
use rrd_core::simulate::{discretize, sample_path};
use rrd_core::wavelet::EvalGrid;
use rrd_core::{DensityEstimate, Error, JumpMixture, RenewalModel, WaveletConfig};

use crate::config::ExperimentConfig;
use crate::HarnessError;

/// Rows of the empirical `p_m` table.
pub const PM_ROWS: usize = 3;

/// `sum_p (f_hat(x_p) - f(x_p))^2 * mesh` over the evaluation nodes.
pub fn l2_error(est: &DensityEstimate, truth: &JumpMixture, grid: &EvalGrid) -> Result<f64, Error> {
    if est.grid != *grid || est.values.len() != grid.len() {
        return Err(Error::GridMismatch);
    }
    let truth: Vec<f64> = grid.nodes().map(|x| truth.pdf(x)).collect();
    l2_error_on_nodes(est, &truth)
}

/// As [`l2_error`] with the truth already evaluated at the nodes.
pub fn l2_error_on_nodes(est: &DensityEstimate, truth: &[f64]) -> Result<f64, Error> {
    if est.values.len() != truth.len() {
        return Err(Error::GridMismatch);
    }
    let ss: f64 = est
        .values
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(ss * est.grid.mesh)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Oracle,
    Naive,
    Corrected(usize),
}

impl Estimator {
    pub fn name(&self) -> String {
        match self {
            Estimator::Oracle => "oracle".into(),
            Estimator::Naive => "naive".into(),
            Estimator::Corrected(k) => format!("corrected_k{k}"),
        }
    }
}

/// One estimator's outcome on one replicate.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Ok(f64),
    Failed(String),
}

impl Outcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            Outcome::Ok(v) => Some(*v),
            Outcome::Failed(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorSummary {
    pub estimator: Estimator,
    /// Indexed by replicate.
    pub outcomes: Vec<Outcome>,
    pub mean_l2: f64,
    /// Sample standard deviation (divisor `n - 1`).
    pub std_l2: f64,
    pub n_ok: usize,
    pub n_failed: usize,
}

impl EstimatorSummary {
    fn from_outcomes(estimator: Estimator, outcomes: Vec<Outcome>) -> Self {
        let ok: Vec<f64> = outcomes.iter().filter_map(Outcome::value).collect();
        let (mean_l2, std_l2) = mean_std(&ok);
        EstimatorSummary {
            estimator,
            n_ok: ok.len(),
            n_failed: outcomes.len() - ok.len(),
            outcomes,
            mean_l2,
            std_l2,
        }
    }

    pub fn name(&self) -> String {
        self.estimator.name()
    }
}

/// Mean and sample standard deviation; NaN where undefined.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::NAN);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PmRow {
    pub m: usize,
    /// `p_m` at the true parameter by quadrature.
    pub quadrature: f64,
    /// Mean over replicates of the fraction of nonzero windows holding exactly `m` jumps.
    pub empirical_mean: f64,
    pub empirical_std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub seeds: Vec<u64>,
    pub estimators: Vec<EstimatorSummary>,
    pub pm_table: Vec<PmRow>,
    /// Fitted interarrival parameter per replicate, when some `K >= 1` ran.
    pub theta_hat: Vec<Option<f64>>,
    /// Estimates from replicate 0, in the order of `estimators`.
    pub representative: Vec<Option<DensityEstimate>>,
    pub wall_clock: Duration,
}

impl ExperimentReport {
    pub fn summary(&self, estimator: Estimator) -> Option<&EstimatorSummary> {
        self.estimators.iter().find(|s| s.estimator == estimator)
    }

    pub fn kappa(&self) -> f64 {
        self.config.wavelet.kappa
    }
}

struct ReplicateResult {
    seed: u64,
    outcomes: Vec<Outcome>,
    estimates: Vec<Option<DensityEstimate>>,
    window_fractions: Vec<f64>,
    theta_hat: Option<f64>,
}

/// The estimator columns, in report order.
pub fn estimator_list(cfg: &ExperimentConfig) -> Vec<Estimator> {
    let mut list = Vec::new();
    if cfg.include_oracle {
        list.push(Estimator::Oracle);
    }
    list.push(Estimator::Naive);
    list.extend(cfg.k_list.iter().map(|&k| Estimator::Corrected(k)));
    list
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let started = Instant::now();
    let model = cfg.model()?;
    let mixture = cfg.mixture()?;
    let wavelet = cfg.wavelet_config()?;
    let grid = wavelet.eval_grid;
    let truth: Vec<f64> = grid.nodes().map(|x| mixture.pdf(x)).collect();
    let estimators = estimator_list(cfg);

    let ctx = Context {
        cfg,
        model: &model,
        mixture: &mixture,
        wavelet: &wavelet,
        truth: &truth,
    };
    let results: Vec<ReplicateResult> = (0..cfg.replicates)
        .into_par_iter()
        .map(|r| ctx.replicate(r, &estimators))
        .collect::<Result<_, _>>()?;

    let summaries = estimators
        .iter()
        .enumerate()
        .map(|(e, &est)| {
            let outcomes = results.iter().map(|r| r.outcomes[e].clone()).collect();
            EstimatorSummary::from_outcomes(est, outcomes)
        })
        .collect();

    let truncation = default_truncation(&model, cfg.delta).max(PM_ROWS);
    let quadrature = count_probs(&model, cfg.delta, truncation)?;
    let pm_table = (0..PM_ROWS)
        .map(|i| {
            let xs: Vec<f64> = results.iter().map(|r| r.window_fractions[i]).collect();
            let (empirical_mean, empirical_std) = mean_std(&xs);
            PmRow {
                m: i + 1,
                quadrature: quadrature[i],
                empirical_mean,
                empirical_std,
            }
        })
        .collect();

    let mut results = results;
    Ok(ExperimentReport {
        config: cfg.clone(),
        seeds: results.iter().map(|r| r.seed).collect(),
        theta_hat: results.iter().map(|r| r.theta_hat).collect(),
        representative: std::mem::take(&mut results[0].estimates),
        estimators: summaries,
        pm_table,
        wall_clock: started.elapsed(),
    })
}

struct Context<'a> {
    cfg: &'a ExperimentConfig,
    model: &'a RenewalModel,
    mixture: &'a JumpMixture,
    wavelet: &'a WaveletConfig,
    truth: &'a [f64],
}

impl Context<'_> {
    fn replicate(
        &self,
        r: usize,
        estimators: &[Estimator],
    ) -> Result<ReplicateResult, HarnessError> {
        let cfg = self.cfg;
        let seed = replicate_seed(cfg.base_seed, r as u64);
        let path = sample_path(self.model, self.mixture, cfg.horizon, seed)?;
        let series = discretize(&path, cfg.delta)?;

        let counts = path.window_counts(cfg.delta)?;
        let nonzero = counts.iter().filter(|c| **c > 0).count();
        let window_fractions = (1..=PM_ROWS as u32)
            .map(|m| {
                let hits = counts.iter().filter(|c| **c == m).count();
                if nonzero == 0 {
                    f64::NAN
                } else {
                    hits as f64 / nonzero as f64
                }
            })
            .collect();

        let keep = r == 0;
        let mut outcomes = Vec::with_capacity(estimators.len());
        let mut estimates = Vec::with_capacity(estimators.len());
        let mut theta_hat = None;
        for est in estimators {
            let result = match *est {
                Estimator::Oracle => oracle_estimator(&path, self.wavelet, cfg.horizon),
                Estimator::Naive => naive_estimator(&series, self.wavelet, cfg.horizon),
                Estimator::Corrected(k) => {
                    corrected_estimator(&series, self.model, k, self.wavelet, cfg.horizon).map(
                        |c| {
                            if let Some(t) = c.theta {
                                if t.clamped {
                                    log::warn!(
                                        "replicate {r}: fitted parameter {} clamped to {}",
                                        t.raw,
                                        t.value
                                    );
                                }
                                theta_hat = Some(t.value);
                            }
                            c.estimate
                        },
                    )
                }
            };
            match result {
                Ok(e) => {
                    outcomes.push(Outcome::Ok(l2_error_on_nodes(&e, self.truth)?));
                    estimates.push(keep.then_some(e));
                }
                Err(err) => {
                    log::warn!("replicate {r}: {} failed: {err}", est.name());
                    outcomes.push(Outcome::Failed(err.to_string()));
                    estimates.push(None);
                }
            }
        }
        Ok(ReplicateResult {
            seed,
            outcomes,
            estimates,
            window_fractions,
            theta_hat,
        })
    }
}
