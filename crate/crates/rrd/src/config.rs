//! Experiment configuration, read from TOML.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use rrd_core::wavelet::{EvalGrid, WaveletConfig, WaveletFilter};
use rrd_core::{Interarrival, JumpKind, JumpMixture, MixtureComponent, ParamBox, RenewalModel};

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub horizon: f64,
    pub delta: f64,
    pub k_list: Vec<usize>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_true")]
    pub include_oracle: bool,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    pub interarrival: InterarrivalSpec,
    pub jumps: Vec<JumpSpec>,
    #[serde(default)]
    pub wavelet: WaveletSpec,
}

fn default_replicates() -> usize {
    100
}

fn default_true() -> bool {
    true
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum InterarrivalSpec {
    #[serde(rename = "beta1")]
    BetaOneTheta {
        theta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param_box: Option<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        quadrature_steps: Option<usize>,
    },
    #[serde(rename = "exponential")]
    Exponential {
        rate: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param_box: Option<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        quadrature_steps: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum JumpSpec {
    Uniform { lo: f64, hi: f64, weight: f64 },
    Laplace { loc: f64, scale: f64, weight: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletSpec {
    #[serde(default = "default_filter")]
    pub filter: String,
    #[serde(default = "default_bin_exponent")]
    pub bin_exponent: u32,
    #[serde(default = "default_max_level")]
    pub max_level: u32,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default = "default_domain")]
    pub domain: [f64; 2],
    #[serde(default = "default_eval_mesh")]
    pub eval_mesh: f64,
}

fn default_filter() -> String {
    "sym4".into()
}
fn default_bin_exponent() -> u32 {
    8
}
fn default_max_level() -> u32 {
    10
}
fn default_kappa() -> f64 {
    1.0
}
fn default_domain() -> [f64; 2] {
    [-10.0, 10.0]
}
fn default_eval_mesh() -> f64 {
    0.01
}

impl Default for WaveletSpec {
    fn default() -> Self {
        WaveletSpec {
            filter: default_filter(),
            bin_exponent: default_bin_exponent(),
            max_level: default_max_level(),
            kappa: default_kappa(),
            domain: default_domain(),
            eval_mesh: default_eval_mesh(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks everything the estimators need before any simulation starts.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if !(self.horizon.is_finite() && self.horizon > 1.0) {
            return bad(format!(
                "horizon must be finite and > 1, got {}",
                self.horizon
            ));
        }
        if !(self.delta.is_finite() && self.delta > 0.0 && self.delta < self.horizon) {
            return bad(format!(
                "delta must lie in (0, horizon), got {}",
                self.delta
            ));
        }
        if self.k_list.is_empty() {
            return bad("k_list must not be empty".into());
        }
        if self.replicates == 0 {
            return bad("replicates must be positive".into());
        }
        self.model()?;
        self.mixture()?;
        self.wavelet_config()?;
        Ok(())
    }

    pub fn model(&self) -> Result<RenewalModel, HarnessError> {
        let (family, param_box, steps) = match self.interarrival {
            InterarrivalSpec::BetaOneTheta {
                theta,
                param_box,
                quadrature_steps,
            } => (
                Interarrival::BetaOneTheta { theta },
                param_box,
                quadrature_steps,
            ),
            InterarrivalSpec::Exponential {
                rate,
                param_box,
                quadrature_steps,
            } => (
                Interarrival::Exponential { rate },
                param_box,
                quadrature_steps,
            ),
        };
        let mut model = RenewalModel::new(family).map_err(config_err)?;
        if let Some([lo, hi]) = param_box {
            model = model.with_param_box(ParamBox::new(lo, hi).map_err(config_err)?);
        }
        if let Some(steps) = steps {
            model = model.with_quadrature_steps(steps).map_err(config_err)?;
        }
        Ok(model)
    }

    pub fn mixture(&self) -> Result<JumpMixture, HarnessError> {
        let components = self
            .jumps
            .iter()
            .map(|j| match *j {
                JumpSpec::Uniform { lo, hi, weight } => MixtureComponent {
                    kind: JumpKind::Uniform { lo, hi },
                    weight,
                },
                JumpSpec::Laplace { loc, scale, weight } => MixtureComponent {
                    kind: JumpKind::Laplace { loc, scale },
                    weight,
                },
            })
            .collect();
        JumpMixture::new(components).map_err(config_err)
    }

    pub fn wavelet_config(&self) -> Result<WaveletConfig, HarnessError> {
        let w = &self.wavelet;
        let filter = match w.filter.to_ascii_lowercase().as_str() {
            "sym4" | "symlet4" => WaveletFilter::Symlet4,
            "db4" | "daubechies4" => WaveletFilter::Daubechies4,
            "haar" | "db1" => WaveletFilter::Haar,
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown wavelet filter {other:?}"
                )))
            }
        };
        let [lo, hi] = w.domain;
        let grid = EvalGrid::new(lo, hi, w.eval_mesh).map_err(config_err)?;
        WaveletConfig::new(filter, w.bin_exponent, w.max_level, w.kappa, (lo, hi), grid)
            .map_err(config_err)
    }

    /// The benchmark setup: Beta(1, 3) interarrivals and the uniform/Laplace mixture.
    pub fn benchmark(horizon: f64, delta: f64, k_list: Vec<usize>, replicates: usize) -> Self {
        ExperimentConfig {
            horizon,
            delta,
            k_list,
            replicates,
            base_seed: 0,
            include_oracle: true,
            output_dir: default_output_dir(),
            interarrival: InterarrivalSpec::BetaOneTheta {
                theta: 3.0,
                param_box: None,
                quadrature_steps: None,
            },
            jumps: vec![
                JumpSpec::Uniform {
                    lo: -2.0,
                    hi: 2.0,
                    weight: 0.5,
                },
                JumpSpec::Laplace {
                    loc: 1.0,
                    scale: 0.5,
                    weight: 0.5,
                },
            ],
            wavelet: WaveletSpec::default(),
        }
    }
}

fn config_err(e: rrd_core::Error) -> HarnessError {
    HarnessError::Config(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
horizon = 10000.0
delta = 0.1
k_list = [0, 1, 2, 3]
replicates = 10
base_seed = 7

[interarrival]
family = "beta1"
theta = 3.0

[[jumps]]
kind = "uniform"
lo = -2.0
hi = 2.0
weight = 0.5

[[jumps]]
kind = "laplace"
loc = 1.0
scale = 0.5
weight = 0.5
"#;

    #[test]
    fn parses_sample() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(cfg.k_list, vec![0, 1, 2, 3]);
        assert_eq!(cfg.wavelet, WaveletSpec::default());
        assert!(cfg.include_oracle);
        assert_eq!(cfg.model().unwrap().param(), 3.0);
        assert!((cfg.mixture().unwrap().pdf(1.0) - 0.625).abs() < 1e-12);
    }

    #[test]
    fn echo_round_trips() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let again = ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn rejects_bad_values() {
        let swap =
            |from: &str, to: &str| ExperimentConfig::from_toml_str(&SAMPLE.replace(from, to));
        assert!(swap("delta = 0.1", "delta = 20000.0").is_err());
        assert!(swap("k_list = [0, 1, 2, 3]", "k_list = []").is_err());
        assert!(swap("weight = 0.5\n\n[[jumps]]", "weight = 0.4\n\n[[jumps]]").is_err());
        assert!(swap("theta = 3.0", "theta = -1.0").is_err());
        assert!(swap("replicates = 10", "replicates = 10\nbogus = 1").is_err());
        assert!(swap("family = \"beta1\"", "family = \"gamma\"").is_err());
    }
}
