use super::config::{Budget, ExperimentConfig, Selection};
use super::risk::{cell_risk, draw_dataset, risk_nodes, RiskEstimate};
use super::sampling::stream_seed;
use crate::error::{Error, Result};
use crate::kernels::Points;
use crate::ridge::{excess_risk_detailed, fit, fit_with_shift, Dataset, QuadratureNodes};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub sigma_best: f64,
    pub lambda_best: f64,
    pub risk_mean: f64,
    pub risk_se: f64,
    pub selection_rule: &'static str,
}

/// Best risk per n under the config's selection rule.
pub fn profile_experiment(config: &ExperimentConfig) -> Result<Vec<ProfileRow>> {
    let mut rows = Vec::new();
    profile_experiment_with(config, &Budget::unlimited(), |r| rows.push(r.clone()))?;
    Ok(rows)
}

/// As `profile_experiment`, streaming rows to `sink` and stopping with
/// `BudgetExceeded` when the budget runs out. The cell counter advances
/// once per (n, σ, λ) evaluated.
pub fn profile_experiment_with<F: FnMut(&ProfileRow)>(config: &ExperimentConfig, budget: &Budget, mut sink: F) -> Result<usize> {
    config.validate()?;
    let nodes = risk_nodes(config)?;
    let mut cells = 0;
    for &n in &config.ns {
        let row = match config.selection {
            Selection::Oracle => oracle_row(config, &nodes, n, budget, &mut cells)?,
            Selection::CrossValidation { folds } => {
                budget.check(cells)?;
                cells += config.sigmas.len() * config.lambdas.len();
                cv_row(config, &nodes, n, folds)?
            }
        };
        sink(&row);
    }
    Ok(config.ns.len())
}

fn oracle_row(config: &ExperimentConfig, nodes: &QuadratureNodes, n: usize, budget: &Budget, cells: &mut usize) -> Result<ProfileRow> {
    let mut best: Option<(usize, usize, RiskEstimate)> = None;
    for si in 0..config.sigmas.len() {
        for li in 0..config.lambdas.len() {
            budget.check(*cells)?;
            *cells += 1;
            let est = match cell_risk(config, nodes, n, si, li, false) {
                Ok(e) => e,
                Err(Error::SingularSystem { .. }) => continue,
                Err(e) => return Err(e),
            };
            if best.as_ref().is_none_or(|b| est.mean < b.2.mean) {
                best = Some((si, li, est));
            }
        }
    }
    let (si, li, est) = best.ok_or(Error::SingularSystem { pivot: 0 })?;
    Ok(ProfileRow {
        n,
        sigma_best: config.sigmas[si],
        lambda_best: config.lambdas[li],
        risk_mean: est.mean,
        risk_se: est.std_error,
        selection_rule: Selection::Oracle.name(),
    })
}

fn subset(data: &Dataset, idx: &[usize]) -> Result<Dataset> {
    let mut x = Points::empty(data.x.dim());
    let mut y = Vec::with_capacity(idx.len());
    for &i in idx {
        x.push(data.x.point(i))?;
        y.push(data.y[i]);
    }
    Dataset::new(x, y, data.seed)
}

/// Held-out squared error of (σ, λ) summed over folds.
fn cv_score(config: &ExperimentConfig, data: &Dataset, folds: &[Vec<usize>], sigma: f64, lambda: f64) -> Result<f64> {
    let kernel = config.kernel(sigma, lambda)?;
    let mut total = 0.0;
    for (k, held) in folds.iter().enumerate() {
        let train: Vec<usize> = folds.iter().enumerate().filter(|(j, _)| *j != k).flat_map(|(_, f)| f.iter().copied()).collect();
        let tr = subset(data, &train)?;
        let f = fit_with_shift(&kernel, &config.domain, &tr, tr.n() as f64 * lambda)?;
        for &i in held {
            let e = f.predict(data.x.point(i))? - data.y[i];
            total += e * e;
        }
    }
    Ok(total)
}

fn cv_row(config: &ExperimentConfig, nodes: &QuadratureNodes, n: usize, folds: usize) -> Result<ProfileRow> {
    if n < 2 {
        return Err(Error::InvalidArgument("cross-validation needs n >= 2".into()));
    }
    let k = folds.min(n);
    let grid: Vec<(usize, usize)> = (0..config.sigmas.len()).flat_map(|s| (0..config.lambdas.len()).map(move |l| (s, l))).collect();
    let runs: Vec<Result<((usize, usize), f64)>> = (0..config.runs)
        .into_par_iter()
        .map(|r| {
            let stream = [n as u64, 0x6376, r as u64];
            let data = draw_dataset(config, n, &stream);
            let mut order: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(config.base_seed, &[n as u64, 0x666f6c64, r as u64]));
            order.shuffle(&mut rng);
            let fold_sets: Vec<Vec<usize>> = (0..k).map(|j| order.iter().skip(j).step_by(k).copied().collect()).collect();
            let mut best = None;
            for &(si, li) in &grid {
                let score = match cv_score(config, &data, &fold_sets, config.sigmas[si], config.lambdas[li]) {
                    Ok(s) => s,
                    Err(Error::SingularSystem { .. }) => continue,
                    Err(e) => return Err(e),
                };
                if best.is_none_or(|(_, b)| score < b) {
                    best = Some(((si, li), score));
                }
            }
            let ((si, li), _) = best.ok_or(Error::SingularSystem { pivot: 0 })?;
            let kernel = config.kernel(config.sigmas[si], config.lambdas[li])?;
            let f = fit(&kernel, &config.domain, &data)?;
            Ok(((si, li), excess_risk_detailed(&f, &config.target, &config.domain, nodes)?.value))
        })
        .collect();
    let mut counts = vec![0usize; grid.len()];
    let mut values = Vec::new();
    let mut excluded = 0;
    for r in runs {
        match r {
            Ok(((si, li), v)) => {
                counts[si * config.lambdas.len() + li] += 1;
                values.push(v);
            }
            Err(_) => excluded += 1,
        }
    }
    if values.is_empty() {
        return Err(Error::SingularSystem { pivot: 0 });
    }
    let est = RiskEstimate::from_values(values, excluded, false);
    // modal selection
    let mode = counts.iter().enumerate().max_by_key(|(i, c)| (**c, std::cmp::Reverse(*i))).map(|(i, _)| i).unwrap_or(0);
    Ok(ProfileRow {
        n,
        sigma_best: config.sigmas[grid[mode].0],
        lambda_best: config.lambdas[grid[mode].1],
        risk_mean: est.mean,
        risk_se: est.std_error,
        selection_rule: Selection::CrossValidation { folds }.name(),
    })
}
