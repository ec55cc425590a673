use crate::bounds::BandInputs;
use crate::error::{Error, Result};
use crate::experiments::ExperimentConfig;
use crate::kernels::{DomainSpec, Family, KernelSpec};
use crate::target::TargetFunction;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

pub const SCHEMA: &str = "kregimes/1";

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cells: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EffdimMethod {
    /// Fourier sums on the torus; `cutoff` fixes ‖m‖∞ ≤ cutoff.
    Spectral {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cutoff: Option<usize>,
    },
    /// Plug-in spectrum of the Gram matrix on `points` quadrature nodes.
    Empirical { points: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffdimSpec {
    pub domain: DomainSpec,
    pub family: Family,
    pub sigmas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub method: EffdimMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetFunction>,
}

fn default_c() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundRequest {
    Taylor { d: u64, alpha: u64, eps: f64, n: f64 },
    Fourier { d: u64, omega: u64, eps: f64, n: f64 },
    Ols { d: usize, n: usize, eps: f64 },
    Rate { alpha: f64, d: usize, big_d: f64, eps: f64, n: f64 },
    SingleFrequency { beta: f64, d: usize, m: Vec<i64>, eps: f64, n: f64 },
    Band {
        n1: f64,
        n2: f64,
        n_plus: f64,
        s: f64,
        trace_sigma: f64,
        norm_fstar_sq: f64,
        eps: f64,
        n: f64,
        #[serde(default = "default_c")]
        c: f64,
    },
}

impl BoundRequest {
    pub fn band_inputs(&self) -> Option<BandInputs> {
        match *self {
            BoundRequest::Band { n1, n2, n_plus, s, trace_sigma, norm_fstar_sq, eps, n, c } => {
                Some(BandInputs { n1, n2, n_plus, s, trace_sigma, norm_fstar_sq, eps, n, c })
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OnlineSpec {
    pub n_max: usize,
    #[serde(default)]
    pub checkpoints: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSpec {
    pub kernel: KernelSpec,
    pub domain: DomainSpec,
    pub n: usize,
    pub anchors: Vec<Vec<f64>>,
    pub probes: Vec<Vec<f64>>,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompSpec {
    pub domain: DomainSpec,
    pub degree: u32,
    pub n: usize,
    pub theta: Vec<f64>,
    pub eps: f64,
}

/// Everything a subcommand needs; each subcommand reads its own section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    #[serde(default)]
    pub budget: BudgetSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effdim: Option<EffdimSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<BoundRequest>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub online: Option<OnlineSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomp: Option<DecompSpec>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.schema != SCHEMA {
            return Err(Error::Config(format!("unsupported schema {:?}, expected {SCHEMA:?}", cfg.schema)));
        }
        Ok(cfg)
    }

    /// Apply command-line overrides and propagate the seed, so the result
    /// is the exact configuration a run used.
    pub fn resolve(mut self, seed: Option<u64>, budget_seconds: Option<u64>, out: Option<PathBuf>) -> Self {
        let seed = seed.or(self.base_seed).or(self.experiment.as_ref().map(|e| e.base_seed)).unwrap_or(0);
        self.base_seed = Some(seed);
        if let Some(e) = self.experiment.as_mut() {
            e.base_seed = seed;
        }
        if budget_seconds.is_some() {
            self.budget.seconds = budget_seconds;
        }
        if out.is_some() {
            self.out = out;
        }
        self
    }

    pub fn seed(&self) -> u64 {
        self.base_seed.unwrap_or(0)
    }

    pub(crate) fn section<'a, T>(&self, s: &'a Option<T>, name: &str) -> Result<&'a T> {
        s.as_ref().ok_or_else(|| Error::Config(format!("config has no `{name}` section")))
    }
}
