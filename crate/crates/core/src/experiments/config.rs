use crate::error::{Error, Result};
use crate::kernels::{DomainSpec, Family, KernelSpec};
use crate::ridge::QuadratureSpec;
use crate::target::TargetFunction;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

fn default_runs() -> usize {
    100
}

fn default_effdim_points() -> usize {
    1024
}

/// Hyperparameter selection rule of a convergence profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum Selection {
    /// Minimum Monte-Carlo mean risk over the grid.
    #[default]
    Oracle,
    /// k-fold cross-validation inside each run.
    CrossValidation { folds: usize },
}

impl Selection {
    pub fn name(&self) -> &'static str {
        match self {
            Selection::Oracle => "oracle",
            Selection::CrossValidation { .. } => "cv",
        }
    }
}

/// Restricts the excess risk to inputs with ‖x‖ in [lower, upper].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiskWindow {
    pub lower: f64,
    pub upper: f64,
}

/// A Monte-Carlo experiment over an (n, σ, λ) grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub domain: DomainSpec,
    pub family: Family,
    pub sigmas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub ns: Vec<usize>,
    pub target: TargetFunction,
    pub eps: f64,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub selection: Selection,
    /// Node count of the quadrature Gram behind the empirical effective
    /// dimensions of a sweep.
    #[serde(default = "default_effdim_points")]
    pub effdim_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub risk_window: Option<RiskWindow>,
}

impl ExperimentConfig {
    pub fn new(domain: DomainSpec, family: Family, target: TargetFunction) -> Self {
        ExperimentConfig {
            domain,
            family,
            sigmas: vec![1.0],
            lambdas: vec![1e-3],
            ns: vec![16],
            target,
            eps: 0.0,
            runs: default_runs(),
            base_seed: 0,
            quadrature: QuadratureSpec::Auto,
            selection: Selection::Oracle,
            effdim_points: default_effdim_points(),
            risk_window: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        self.target.validate(self.domain.dim())?;
        if self.sigmas.is_empty() || self.lambdas.is_empty() || self.ns.is_empty() {
            return Err(Error::Config("sigma, lambda and n grids must be nonempty".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.ns.contains(&0) {
            return Err(Error::Config("sample sizes must be positive".into()));
        }
        if !(self.eps >= 0.0) || !self.eps.is_finite() {
            return Err(Error::Config(format!("eps = {} must be finite and nonnegative", self.eps)));
        }
        if self.effdim_points < 2 {
            return Err(Error::Config("effdim_points must be at least 2".into()));
        }
        if let Selection::CrossValidation { folds } = self.selection {
            if folds < 2 {
                return Err(Error::Config("cross-validation needs at least 2 folds".into()));
            }
        }
        if let Some(w) = self.risk_window {
            if !(w.lower >= 0.0 && w.upper > w.lower) {
                return Err(Error::Config("risk window needs 0 <= lower < upper".into()));
            }
        }
        for &s in &self.sigmas {
            for &l in &self.lambdas {
                self.kernel(s, l).map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn kernel(&self, sigma: f64, lambda: f64) -> Result<KernelSpec> {
        KernelSpec::new(self.family, sigma, lambda)
    }

    pub fn cells(&self) -> usize {
        self.sigmas.len() * self.lambdas.len() * self.ns.len()
    }
}

/// Wall-clock and grid-cell limits of a run.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_cells: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(s: u64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_secs(s)), max_cells: None }
    }

    pub fn with_max_cells(mut self, cells: usize) -> Self {
        self.max_cells = Some(cells);
        self
    }

    pub(crate) fn check(&self, completed: usize) -> Result<()> {
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        let over_cells = self.max_cells.is_some_and(|m| completed >= m);
        if over_time || over_cells {
            return Err(Error::BudgetExceeded { completed });
        }
        Ok(())
    }
}
