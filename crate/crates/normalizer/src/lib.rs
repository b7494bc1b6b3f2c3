//! Rewrites nested parity sums into combinations whose junctions match the
//! block rules, with `o-` only in the head.
//!
//! Junction exchanges use `Σ_{n ≥ m} = Σ_{n > m} + Σ_{n = m}`; diagonal
//! pieces are reduced with partial fractions and `o-` blocks below the head
//! are shifted to `o+`.

mod canon;
mod pf;

pub use canon::{canonicalize, is_canonical, measure, rescale_alias, rewrite_step, ComboTerm, NormalizeError, Rewrite, SpecCombo};
pub use pf::{partial_fraction, LinearFormPair, PartialFractionError};
