//! Direct summation of a [`SeriesSpec`], independent of the integral pipeline.

use crate::spec::{validate, Form, Junction, SeriesSpec, Violation};
use apery_numerics::{accelerate, bits_for_digits, Cx, Float, HPComplex, HPReal, Integer, Rational, TailModel};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid spec: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("term with zero denominator at index {index} of factor {factor}")]
    ZeroDenominator { factor: usize, index: u64 },
    #[error("oracle unavailable at |x2|=1 for depth {0}, use pipeline cross-check")]
    Unavailable(usize),
    #[error("{0}")]
    Accel(#[from] apery_numerics::AccelError),
}

trait Scalar: Clone {
    fn zero_like(&self) -> Self;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn inv_pow(&self, l: i64, s: u32) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for Float {
    fn zero_like(&self) -> Self {
        Float::new(self.prec())
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self * o)
    }
    fn inv_pow(&self, l: i64, s: u32) -> Self {
        let p = Float::with_val(self.prec(), l);
        let p = Float::with_val(self.prec(), p.pow(s));
        p.recip()
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn inv_pow(&self, l: i64, s: u32) -> Self {
        Rational::from((Integer::from(1), Integer::from(l).pow(s)))
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

use rug::ops::Pow;

/// Running state of the nested sum: prefix sums of the inner levels.
struct Nest<T: Scalar> {
    forms: Vec<(Form, u32)>,
    junctions: Vec<Junction>,
    prefix: Vec<T>,
    one: T,
}

impl<T: Scalar> Nest<T> {
    fn new(spec: &SeriesSpec, one: T) -> Self {
        let zero = one.zero_like();
        Nest {
            forms: spec.factors.iter().map(|f| (f.form, f.exp)).collect(),
            junctions: spec.junctions.clone(),
            prefix: vec![zero; spec.depth() + 1],
            one,
        }
    }

    /// Advances to index `m` and returns the inner factor of the outermost
    /// index, `l_1(m)^{-s_1} · Σ_{m ≻ n_2 ≻ …} Π_{j≥2} l_j(n_j)^{-s_j}`.
    fn step(&mut self, m: u64) -> Result<T, OracleError> {
        let d = self.forms.len();
        let mut inner_of_next: Option<T> = None;
        let mut v1 = self.one.zero_like();
        for j in (0..d).rev() {
            // A_j(m): sum over the lower indices given n_j = m
            let a = if j == d - 1 {
                match self.junctions[j] {
                    Junction::Strict if m == 0 => self.one.zero_like(),
                    _ => self.one.clone(),
                }
            } else {
                match self.junctions[j] {
                    Junction::Weak => {
                        let mut p = self.prefix[j + 1].clone();
                        if let Some(cur) = &inner_of_next {
                            p.add_assign(cur);
                        }
                        p
                    }
                    Junction::Strict => self.prefix[j + 1].clone(),
                }
            };
            let (form, s) = self.forms[j];
            let l = form.eval(m as i64);
            let v = if a.is_zero() {
                a
            } else if l == 0 {
                return Err(OracleError::ZeroDenominator { factor: j + 1, index: m });
            } else {
                a.mul(&self.one.inv_pow(l, s))
            };
            if let Some(cur) = inner_of_next.take() {
                self.prefix[j + 1].add_assign(&cur);
            }
            if j == 0 {
                v1 = v.clone();
            }
            inner_of_next = Some(v);
        }
        if let Some(cur) = inner_of_next {
            self.prefix[0].add_assign(&cur);
        }
        Ok(v1)
    }
}

/// Exact partial sum over `n1 ≤ n_max`, for rational `x2`.
pub fn partial_sums_exact(spec: &SeriesSpec, n_max: u64) -> Result<Vec<Rational>, OracleError> {
    let mut nest = Nest::new(spec, Rational::from(1));
    let mut total = Rational::new();
    let mut b = Rational::from(1);
    let mut qn = Rational::from(1);
    let mut out = Vec::new();
    for m in 0..=n_max {
        if m > 0 {
            b *= Rational::from((2 * m, 2 * m - 1));
            qn *= &spec.x2;
        }
        let inner = nest.step(m)?;
        let mut w = Rational::from(&qn * &b);
        if spec.binom_power == 2 {
            w *= &b;
        }
        total += Rational::from(&w * &inner);
        out.push(total.clone());
    }
    Ok(out)
}

/// Floating-point partial sums over `n1 ≤ N` for each checkpoint `N` (ascending).
pub fn partial_sums_float(spec: &SeriesSpec, prec: u32, checkpoints: &[u64]) -> Result<Vec<Float>, OracleError> {
    let mut nest = Nest::new(spec, Float::with_val(prec, 1));
    let q = Float::with_val(prec, &spec.x2);
    let mut total = Float::new(prec);
    let mut w = Float::with_val(prec, 1);
    let mut out = Vec::new();
    let last = *checkpoints.last().unwrap_or(&0);
    let mut ci = 0;
    for m in 0..=last {
        if m > 0 {
            let r = Float::with_val(prec, 2 * m) / (2 * m - 1);
            w *= &r;
            if spec.binom_power == 2 {
                w *= &r;
            }
            w *= &q;
        }
        let inner = nest.step(m)?;
        total += Float::with_val(prec, &w * &inner);
        while ci < checkpoints.len() && checkpoints[ci] == m {
            out.push(total.clone());
            ci += 1;
        }
    }
    Ok(out)
}

/// Direct summation with a geometric tail bound (|x2| < 1) or tail
/// extrapolation (|x2| = 1). Depth ≥ 4 at |x2| = 1 is refused.
pub fn oracle_eval(spec: &SeriesSpec, target_digits: u32) -> Result<HPComplex, OracleError> {
    let v = validate(spec);
    if !v.is_empty() {
        return Err(OracleError::Invalid(v));
    }
    let prec = bits_for_digits(target_digits);
    let qa = Rational::from(spec.x2.abs_ref());
    let d = spec.depth();
    let p = spec.binom_power as f64;
    if qa < 1 {
        let qf = qa.to_f64();
        let eps = 10f64.powi(-(target_digits as i32) - 4);
        // bound on the remaining terms after M
        let tail = |m: f64| -> f64 {
            if qf == 0.0 {
                return 0.0;
            }
            let lead = (std::f64::consts::PI * (m + 1.0)).powf(p / 2.0) * qf.powf(m + 1.0);
            let logs = (2.0 + (2.0 * m + 3.0).ln()).powi(d as i32);
            2.0 * lead * logs / (1.0 - qf)
        };
        let mut m = 1u64;
        while tail(m as f64) > eps {
            m += 1;
        }
        let sums = partial_sums_float(spec, prec, &[m])?;
        let err = tail(m as f64) + 2f64.powi(-(prec as i32)) * (m as f64);
        return Ok(HPReal::new(sums[0].clone(), err).into_complex());
    }
    if d >= 4 {
        return Err(OracleError::Unavailable(d));
    }
    let logs = spec.factors[1..].iter().filter(|f| f.exp == 1).count().min(2) as u32;
    let s1 = spec.factors[0].exp as f64;
    let model = TailModel { first: s1 - 1.0 - p / 2.0, step: 1.0, log_powers: logs };
    let ns: Vec<u64> = (6..=17).map(|e| 1u64 << e).collect();
    let sums = partial_sums_float(spec, prec, &ns)?;
    let sums: Vec<HPReal> = sums.into_iter().map(HPReal::exact).collect();
    let r = accelerate(&ns, &sums, &model)?;
    Ok(HPComplex::new(Cx::from_real(r.value.value), r.value.err))
}
