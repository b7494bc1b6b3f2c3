//! Block rules turning canonical specs into prefactored iterated integrals
//! over `[0, x]` in the letters ω0, ω1, ω2, ω3, ω5, ω8, ω20.
//!
//! Every word ends with the tail letter ω1 (the `n = 0` ending block).

mod compile;
mod prefactor;

pub use compile::{compile, compile_squared, compile_squared_with, compile_with, odd_power_word, CompileError, Mode, PiTerm, PrefactoredIntegral};
pub use prefactor::Prefactor;
