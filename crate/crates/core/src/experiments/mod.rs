//! Data generation, Monte-Carlo risk estimation, hyperparameter sweeps,
//! convergence profiles and the online growth solver.

mod config;
mod linear;
mod online;
mod profile;
mod risk;
mod sampling;
mod slope;
mod sweep;

pub use config::{Budget, ExperimentConfig, RiskWindow, Selection};
pub use linear::{conditional_feature_risk, ols_risk};
pub use online::{online_growth_experiment, scratch_solve_mul_adds, OnlineCurve, OnlineRow};
pub use profile::{profile_experiment, profile_experiment_with, ProfileRow};
pub use risk::{monte_carlo_risk, risk_nodes, RiskEstimate};
pub use sampling::{sample_inputs, sample_labels, stream_rng, stream_seed};
pub use slope::{slope_fit, SlopeFit};
pub use sweep::{effdim_gram_eigenvalues, effdim_nodes, sweep, sweep_with, transition_points, SweepRow, SweepTable};
