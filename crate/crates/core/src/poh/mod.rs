//! p-order-hold reconstruction of jittered samples.
//!
//! A p-order hold turns samples `q_n` taken at `T μ_n = T(n + ε_n)` into
//! `Σ_n q_n rect^(p)((t - T μ_n)/T)`; `p = 1` is the zero-order-hold
//! staircase. Next to that naive reconstruction, the experiment driver runs
//! the frame algorithm on the jittered zero-order-hold family, with bounds
//! from its stability certificate when the jitter is within budget.

mod budget;
mod experiment;
mod hold;
mod jitter;
mod signal;

pub use budget::{budget_certificate, jitter_budget, BudgetTarget, JitterBudget, JitterModel, BUDGET_GUARD};
pub use experiment::{
    hold_output, reconstruction_experiment, BoundsSource, ExperimentConfig, ExperimentReport,
    FrameBranchReport,
};
pub use hold::hold_reconstruct;
pub use jitter::{sample_with_jitter, JitterDistribution, JitterRealization, JitteredSample};
pub use signal::{Builtin, FnSignal, NodeGrid, SignalGrid, SignalSource};
