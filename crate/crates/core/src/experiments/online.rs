use super::config::ExperimentConfig;
use super::risk::{draw_dataset, risk_nodes};
use crate::error::{Error, Result};
use crate::linalg::{block_inverse_extend_counted, MulAddCounter, SymMatrix};
use crate::ridge::{excess_risk_detailed, fit_with_shift, Dataset, RidgeFit};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OnlineRow {
    pub n: usize,
    pub risk: f64,
    /// Risk of a from-scratch fit, at checkpoints only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scratch_risk: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OnlineCurve {
    pub rows: Vec<OnlineRow>,
    /// Multiply-adds of the recursive inverse updates and dual solves.
    pub online_mul_adds: u64,
    /// Multiply-adds n_max separate Cholesky solves would have used.
    pub scratch_mul_adds: u64,
    /// Border jitter added at steps whose Schur complement vanished.
    pub jitter_steps: usize,
}

/// Multiply-adds of a Cholesky factorisation plus one solve at size n, as
/// counted by the linalg routines.
pub fn scratch_solve_mul_adds(n: usize) -> u64 {
    let n = n as u64;
    let factor: u64 = (0..n).map(|j| j + (n - j - 1) * (j + 1)).sum();
    factor + n * (n + 1)
}

/// Grow one dataset of size n_max a sample at a time, maintaining
/// (K̂ₙ + shift·I)⁻¹ with bordered-inverse updates, and record the risk
/// after every step. The shift is fixed to n_max·λ so that every step
/// extends the same matrix; the first (σ, λ) of the grid is used.
/// Steps in `checkpoints` are also refitted from scratch.
pub fn online_growth_experiment(config: &ExperimentConfig, n_max: usize, checkpoints: &[usize]) -> Result<OnlineCurve> {
    config.validate()?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let kernel = config.kernel(config.sigmas[0], config.lambdas[0])?;
    let shift = n_max as f64 * config.lambdas[0];
    let nodes = risk_nodes(config)?;
    let full = draw_dataset(config, n_max, &[n_max as u64, 0x6f6e_6c69]);
    let ev = kernel.evaluator(&config.domain)?;
    let mut counter = MulAddCounter::default();
    let mut inv = SymMatrix::identity(0);
    let mut rows = Vec::with_capacity(n_max);
    let mut jitter_steps = 0;
    let mut scratch = 0u64;
    for n in 1..=n_max {
        let x = full.x.point(n - 1);
        let prefix = full.x.prefix(n - 1);
        let col = ev.column(&prefix, x)?;
        let b = ev.eval(x, x)? + shift;
        inv = match block_inverse_extend_counted(&inv, &col, b, &mut counter) {
            Ok(m) => m,
            Err(Error::SingularBorder { .. }) => {
                jitter_steps += 1;
                let jitter = 1e-10 * b.abs().max(1e-300);
                block_inverse_extend_counted(&inv, &col, b + jitter, &mut counter)?
            }
            Err(e) => return Err(e),
        };
        let y = &full.y[..n];
        let dual = inv.matvec(y)?;
        counter.add((n * n) as u64);
        let f = RidgeFit::from_dual(kernel, &config.domain, full.x.prefix(n), dual, shift)?;
        let risk = excess_risk_detailed(&f, &config.target, &config.domain, &nodes)?.value;
        let scratch_risk = if checkpoints.contains(&n) {
            let data = Dataset::new(full.x.prefix(n), y.to_vec(), full.seed)?;
            let g = fit_with_shift(&kernel, &config.domain, &data, shift)?;
            Some(excess_risk_detailed(&g, &config.target, &config.domain, &nodes)?.value)
        } else {
            None
        };
        scratch += scratch_solve_mul_adds(n);
        rows.push(OnlineRow { n, risk, scratch_risk });
    }
    Ok(OnlineCurve { rows, online_mul_adds: counter.0, scratch_mul_adds: scratch, jitter_steps })
}
