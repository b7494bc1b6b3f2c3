//! Extrapolation of partial sums (or any sequence sampled at abscissas
//! `N_i → ∞`) under an explicit asymptotic tail model.

use crate::hp::HPReal;
use crate::linalg;
use rug::ops::Pow;
use rug::Float;
use thiserror::Error;

/// Tail model `S_N ≈ L + Σ_k Σ_{j ≤ J} c_kj · N^-(first + k·step) · log^j N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailModel {
    pub first: f64,
    pub step: f64,
    pub log_powers: u32,
}

impl TailModel {
    /// Pure power law `N^-first, N^-(first+step), ...`.
    pub fn power_law(first: f64, step: f64) -> Self {
        TailModel { first, step, log_powers: 0 }
    }

    /// `N^(-1/2)` times a polynomial in `1/N` and `log N`.
    pub fn half_integer(log_powers: u32) -> Self {
        TailModel { first: 0.5, step: 1.0, log_powers }
    }

    /// Basis exponents ordered by decreasing asymptotic size.
    fn basis(&self, count: usize) -> Vec<(f64, u32)> {
        let mut out = Vec::with_capacity(count);
        let mut k = 0;
        while out.len() < count {
            let e = self.first + k as f64 * self.step;
            for j in (0..=self.log_powers).rev() {
                if out.len() < count {
                    out.push((e, j));
                }
            }
            k += 1;
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum AccelError {
    #[error("acceleration needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("acceleration failed: column differences {diffs:?} do not decrease")]
    NotConvergent { diffs: Vec<f64> },
    #[error("acceleration failed: singular extrapolation system")]
    Singular,
}

/// Extrapolated limit with the column estimates that produced it.
#[derive(Clone, Debug)]
pub struct Extrapolated {
    pub value: HPReal,
    /// Limits from fits using the last 2, 3, ..., n points.
    pub columns: Vec<Float>,
}

fn fit(points: &[(Float, Float)], basis: &[(f64, u32)]) -> Option<Float> {
    let prec = points[0].1.prec();
    let mut rows = Vec::with_capacity(points.len());
    let mut rhs = Vec::with_capacity(points.len());
    for (nn, v) in points {
        let ln = Float::with_val(prec, nn.ln_ref());
        let mut row = vec![Float::with_val(prec, 1)];
        for &(e, j) in basis {
            let p = nn.clone().pow(-e);
            let l = ln.clone().pow(j);
            row.push(p * l);
        }
        rows.push(row);
        rhs.push(v.clone());
    }
    linalg::solve(rows, rhs).map(|x| x[0].clone())
}

/// Extrapolates `(N_i, S_i)` pairs (any positive abscissas growing to infinity).
pub fn extrapolate(points: &[(Float, HPReal)], model: &TailModel) -> Result<Extrapolated, AccelError> {
    let basis = model.basis(points.len().saturating_sub(1));
    extrapolate_with_basis(points, &basis)
}

/// Like [`extrapolate`] with an explicit list of `(e, j)` terms `N^-e · log^j N`,
/// ordered by decreasing asymptotic size; a fit on `m` points uses the first `m − 1`.
pub fn extrapolate_with_basis(points: &[(Float, HPReal)], basis: &[(f64, u32)]) -> Result<Extrapolated, AccelError> {
    if points.len() < 3 {
        return Err(AccelError::TooFewPoints { needed: 3, got: points.len() });
    }
    let first = &points[0].1.value;
    let input_err = points.iter().map(|p| p.1.err).fold(0.0, f64::max);
    if points.iter().all(|p| p.1.value == *first) {
        let v = HPReal::new(first.clone(), input_err);
        return Ok(Extrapolated { value: v, columns: vec![first.clone()] });
    }
    let raw: Vec<(Float, Float)> = points.iter().map(|(n, v)| (n.clone(), v.value.clone())).collect();
    let n = raw.len();
    let mut columns = Vec::new();
    for m in 2..=n {
        let sub = &raw[n - m..];
        let b = &basis[..(m - 1).min(basis.len())];
        columns.push(fit(sub, b).ok_or(AccelError::Singular)?);
    }
    let prec = columns[0].prec();
    let diffs: Vec<f64> = columns.windows(2).map(|w| Float::with_val(prec, &w[1] - &w[0]).abs().to_f64()).collect();
    // pick the column where two consecutive differences are jointly smallest
    let mut pick = diffs.len();
    let mut err = diffs[diffs.len() - 1];
    for i in 1..diffs.len() {
        let e = diffs[i].max(diffs[i - 1]);
        if e < err || (e == err && i + 1 > pick) {
            err = e;
            pick = i + 1;
        }
    }
    let best = columns[pick].clone();
    let raw_step = Float::with_val(prec, &raw[n - 1].1 - &raw[n - 2].1).abs().to_f64();
    let floor = best.to_f64().abs().max(1.0) * 2f64.powi(-(prec as i32) / 2);
    if err > raw_step && raw_step > floor {
        return Err(AccelError::NotConvergent { diffs });
    }
    let err = err.max(input_err * 10.0);
    Ok(Extrapolated { value: HPReal::new(best, err), columns })
}

/// Extrapolates partial sums taken at truncation points `ns`.
/// Requires at least 6 points.
pub fn accelerate(ns: &[u64], partial_sums: &[HPReal], model: &TailModel) -> Result<Extrapolated, AccelError> {
    if partial_sums.len() < 6 || ns.len() != partial_sums.len() {
        return Err(AccelError::TooFewPoints { needed: 6, got: partial_sums.len().min(ns.len()) });
    }
    let prec = partial_sums[0].prec();
    let pts: Vec<(Float, HPReal)> = ns.iter().zip(partial_sums).map(|(&n, s)| (Float::with_val(prec, n), s.clone())).collect();
    extrapolate(&pts, model)
}
