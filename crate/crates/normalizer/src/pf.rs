use apery_numerics::{GaussianRational, Integer, Rational};
use apery_series::Form;
use rug::ops::Pow;
use thiserror::Error;

/// `1/(U^s V^t)` for two parity forms whose difference is constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearFormPair {
    pub u: Form,
    pub s: u32,
    pub v: Form,
    pub t: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialFractionError {
    #[error("forms are identical")]
    IdenticalForms,
    #[error("form `n` must be rescaled to `e` first")]
    AliasForm,
}

/// `1/(U^s V^t) = Σ_i a_i/U^i + Σ_j b_j/V^j` with exact coefficients.
pub fn partial_fraction(pair: LinearFormPair) -> Result<Vec<(GaussianRational, Form, u32)>, PartialFractionError> {
    let LinearFormPair { u, s, v, t } = pair;
    if u == Form::N || v == Form::N {
        return Err(PartialFractionError::AliasForm);
    }
    if u == v {
        return Err(PartialFractionError::IdenticalForms);
    }
    // V - U = c, both have slope 2
    let c = v.affine().1 - u.affine().1;
    let mut out = Vec::new();
    for i in (1..=s).rev() {
        out.push((coefficient(s, i, t, c), u, i));
    }
    for j in (1..=t).rev() {
        out.push((coefficient(t, j, s, -c), v, j));
    }
    out.retain(|(a, _, _)| !a.is_zero());
    Ok(out)
}

/// Coefficient of `1/U^i` in `1/(U^s (U+c)^t)`: `(−1)^{s−i} C(t+s−i−1, s−i) c^{−(t+s−i)}`.
fn coefficient(s: u32, i: u32, t: u32, c: i64) -> GaussianRational {
    let k = s - i;
    let binom = Integer::from(t + k - 1).binomial(k);
    let den = Integer::from(c).pow(t + k);
    let mut r = Rational::from((binom, den));
    if k % 2 == 1 {
        r = -r;
    }
    GaussianRational::real(r)
}
