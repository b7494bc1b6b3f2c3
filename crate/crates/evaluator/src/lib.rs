//! Numeric engines for iterated integrals and multiple polylogarithms, and
//! the end-to-end evaluation of series specifications.

mod mpl;
mod pipeline;
mod theta;
mod xmarch;

pub use mpl::{mpl_index, mpl_partial_sums, mpl_sum, mpl_sum_conditional, MplError};
pub use pipeline::{
    bundle_at, bundle_limit, compile_series, evaluate_pi, evaluate_series, evaluate_series_with, limit_basis, CompiledSeries, Engine, EvalError, EvalOptions, Evaluation, LimitInfo, DEEP_LADDER,
    DEFAULT_LADDER,
};
pub use theta::{omega_march, omega_march_sum};
pub use xmarch::{march_word, ode_march, MarchError, MarchProblem, PoleLetter, PoleTerm};
