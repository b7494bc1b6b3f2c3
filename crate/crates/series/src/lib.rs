//! Series DSL for Apéry-type sums with mixed-parity indices, the binomial
//! weight `b_n = 4^n / C(2n,n)`, and direct-summation oracles.

mod binom;
mod closed;
mod interleave;
mod oracle;
mod polylog;
mod spec;

pub use binom::{binom_weight, binom_weight_float};
pub use closed::{closed_form_tstar, t_star_direct, tstar_spec, ClosedFormError, TStarVariant};
pub use interleave::{interleave_chains, ChainHead};
pub use oracle::{oracle_eval, partial_sums_exact, partial_sums_float, OracleError};
pub use polylog::polylog;
pub use spec::{parse_spec, validate, Factor, Form, Junction, SeriesSpec, SyntaxError, Violation};
