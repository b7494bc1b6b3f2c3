//! Arbitrary-precision real and complex values on top of MPFR, elementary
//! functions with domain checks, tail extrapolation and exact Gaussian
//! rationals.

mod accel;
mod cx;
mod elementary;
mod gaussian;
mod hp;
pub mod linalg;

pub use accel::{accelerate, extrapolate, extrapolate_with_basis, AccelError, Extrapolated, TailModel};
pub use cx::Cx;
pub use elementary::{elementary, ElemError, ElemFn};
pub use gaussian::{GaussianRational, ParseGaussianError};
pub use hp::{bits_for_digits, HPComplex, HPReal};

pub use rug::{Float, Integer, Rational};
