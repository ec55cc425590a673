use super::config::ExperimentConfig;
use super::sampling::{sample_inputs, sample_labels, stream_rng};
use crate::error::{Error, Result};
use crate::kernels::Points;
use crate::numeric::mean_and_se;
use crate::ridge::{excess_risk_detailed, fit, Dataset, QuadratureNodes};
use rayon::prelude::*;
use serde::Serialize;

/// Mean of per-run excess risks with standard error sd/√runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskEstimate {
    pub mean: f64,
    pub std_error: f64,
    /// Runs that entered the mean.
    pub runs: usize,
    /// Runs dropped because the fit failed.
    pub excluded: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl RiskEstimate {
    pub fn from_values(values: Vec<f64>, excluded: usize, keep: bool) -> Self {
        let (mean, std_error) = mean_and_se(&values);
        RiskEstimate { mean, std_error, runs: values.len(), excluded, values: keep.then_some(values) }
    }
}

/// Quadrature nodes of a config, restricted to its risk window if any.
pub fn risk_nodes(config: &ExperimentConfig) -> Result<QuadratureNodes> {
    let nodes = config.quadrature.nodes(&config.domain)?;
    let Some(w) = config.risk_window else { return Ok(nodes) };
    let d = nodes.points.dim();
    let mut kept = Points::empty(d);
    for p in nodes.points.iter() {
        let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r >= w.lower && r <= w.upper {
            kept.push(p)?;
        }
    }
    if kept.n() == 0 {
        return Err(Error::QuadratureMismatch("risk window contains no quadrature node".into()));
    }
    Ok(QuadratureNodes { points: kept, grid_axis: None, monte_carlo: nodes.monte_carlo })
}

pub(crate) fn draw_dataset(config: &ExperimentConfig, n: usize, stream: &[u64]) -> Dataset {
    let mut rng = stream_rng(config.base_seed, stream);
    let x = sample_inputs(&config.domain, n, &mut rng);
    let y = sample_labels(&config.target, &x, config.eps, &mut rng);
    Dataset::new(x, y, crate::experiments::stream_seed(config.base_seed, stream)).expect("n >= 1")
}

/// E[𝓔(fₙ)] over `config.runs` datasets for the grid cell
/// (sigmas[si], lambdas[li]); run r draws from the stream
/// (base_seed, n, si, li, r).
pub fn monte_carlo_risk(config: &ExperimentConfig, n: usize, si: usize, li: usize) -> Result<RiskEstimate> {
    let nodes = risk_nodes(config)?;
    cell_risk(config, &nodes, n, si, li, false)
}

pub(crate) fn cell_risk(
    config: &ExperimentConfig,
    nodes: &QuadratureNodes,
    n: usize,
    si: usize,
    li: usize,
    keep: bool,
) -> Result<RiskEstimate> {
    let (&sigma, &lambda) = match (config.sigmas.get(si), config.lambdas.get(li)) {
        (Some(s), Some(l)) => (s, l),
        _ => return Err(Error::InvalidArgument("grid index out of range".into())),
    };
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let kernel = config.kernel(sigma, lambda)?;
    let results: Vec<Result<f64>> = (0..config.runs)
        .into_par_iter()
        .map(|r| {
            let data = draw_dataset(config, n, &[n as u64, si as u64, li as u64, r as u64]);
            let f = fit(&kernel, &config.domain, &data)?;
            Ok(excess_risk_detailed(&f, &config.target, &config.domain, nodes)?.value)
        })
        .collect();
    let mut values = Vec::with_capacity(results.len());
    let mut first_err = None;
    for r in results {
        match r {
            Ok(v) => values.push(v),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let excluded = config.runs - values.len();
    if values.is_empty() {
        return Err(first_err.expect("at least one run"));
    }
    Ok(RiskEstimate::from_values(values, excluded, keep))
}
