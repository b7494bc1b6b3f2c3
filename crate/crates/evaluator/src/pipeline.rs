//! End-to-end evaluation: normalize, compile, change variables, integrate.

use crate::mpl::{mpl_index, MplError};
use crate::xmarch::{ode_march, MarchError, MarchProblem};
use apery_compiler::{compile, compile_squared, compile_squared_with, CompileError, Mode, PrefactoredIntegral};
use apery_cov::{to_cmzv, to_x_alphabet, CovError};
use apery_normalizer::{canonicalize, NormalizeError};
use apery_numerics::{bits_for_digits, extrapolate_with_basis, AccelError, Cx, Float, GaussianRational, HPComplex, HPReal, Rational};
use apery_series::{validate, SeriesSpec, Violation};
use apery_words::WordSum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Numeric engine for the integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Power-series march of the `u`-alphabet words.
    March,
    /// Nested sums of the lowered polylogarithm values (only at `x = 1`).
    Sums,
    /// Both, with an agreement check.
    Both,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("invalid spec: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("the integral pipeline needs 0 < x^2 <= 1; use the oracle for x^2 = {0}")]
    OutOfRange(Rational),
    #[error("{0}")]
    Normalize(#[from] NormalizeError),
    #[error("{0}")]
    Compile(#[from] CompileError),
    #[error("{0}")]
    Cov(#[from] CovError),
    #[error("{0}")]
    March(#[from] MarchError),
    #[error("{0}")]
    Mpl(#[from] MplError),
    #[error("limit extrapolation failed: {0}")]
    Limit(#[from] AccelError),
    #[error("the sums engine needs x^2 = 1 and pure polylogarithm letters")]
    SumsUnavailable,
    #[error("engines disagree by {diff:e} (estimates {march_err:e}, {sums_err:e})")]
    Disagreement { diff: f64, march_err: f64, sums_err: f64 },
}

/// Evaluation settings.
#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub digits: u32,
    pub engine: Engine,
    /// Exponents `k` of the limit abscissas `x_k = 1 − 2^{−k}`; `None` picks automatically.
    pub ladder: Option<Vec<u32>>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { digits: 40, engine: Engine::March, ladder: None }
    }
}

/// Diagnostics of a limit-mode evaluation.
#[derive(Clone, Debug)]
pub struct LimitInfo {
    pub ladder: Vec<u32>,
    pub bundle_terms: usize,
    pub value: HPComplex,
}

/// Value with provenance.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: HPComplex,
    pub engine: Engine,
    /// Number of integral terms evaluated (at one abscissa for bundles).
    pub terms: usize,
    pub limit: Option<LimitInfo>,
}

/// The default abscissas `k = 4..=12`.
pub const DEFAULT_LADDER: [u32; 9] = [4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Abscissas reaching much closer to `x = 1`, used when the default fit is too coarse.
pub const DEEP_LADDER: [u32; 12] = [12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56];

fn x_of(x2: &Rational, prec: u32) -> Float {
    Float::with_val(prec, x2).sqrt()
}

/// Evaluates a prefactored integral at its own point `x`.
pub fn evaluate_pi(pi: &PrefactoredIntegral, digits: u32, engine: Engine) -> Result<(HPComplex, Engine), EvalError> {
    let prec = bits_for_digits(digits);
    let terms = to_x_alphabet(pi);
    let march = |terms: &[apery_cov::CovTerm]| -> Result<HPComplex, EvalError> {
        let x = x_of(&pi.x2, prec);
        let lower = apery_cov::lambda(&x);
        let mut acc = Cx::zero(prec);
        let mut err = 0.0;
        let mut groups: Vec<(apery_compiler::Prefactor, WordSum<apery_words::XSymbol>)> = Vec::new();
        for t in terms {
            let ws = WordSum::term(t.scalar.clone(), t.word.clone());
            match groups.iter_mut().find(|g| g.0 == t.prefactor) {
                Some(g) => g.1.add_assign(&ws),
                None => groups.push((t.prefactor, ws)),
            }
        }
        for (pf, ws) in groups {
            let f = pf.eval(&x).ok_or(EvalError::Compile(CompileError::SingularPrefactor))?;
            let v = ode_march(&MarchProblem { words: ws, lower: lower.clone(), digits })?;
            acc.add_assign(&v.value.scale(&f));
            err += v.err * f.to_f64().abs().max(1.0);
        }
        Ok(HPComplex::new(acc, err))
    };
    let sums = |terms: &[apery_cov::CovTerm]| -> Result<HPComplex, EvalError> {
        if pi.x2 != 1 {
            return Err(EvalError::SumsUnavailable);
        }
        let expr = to_cmzv(terms)?;
        let mut acc = Cx::zero(prec);
        let mut err = 0.0;
        for t in &expr.terms {
            if t.index().z.is_empty() {
                acc.add_assign(&t.coeff.to_cx(prec));
                continue;
            }
            let v = mpl_index(&t.index(), digits)?;
            acc.add_assign(&t.coeff.to_cx(prec).mul(&v.value));
            err += v.err * t.coeff.to_cx(53).abs_f64();
        }
        Ok(HPComplex::new(acc, err))
    };
    match engine {
        Engine::March => Ok((march(&terms)?, Engine::March)),
        Engine::Sums => {
            if terms.iter().any(|t| t.word.letters().iter().any(|l| matches!(l, apery_words::XSymbol::Mono(apery_words::XLetter::Q(_))))) {
                return Err(EvalError::SumsUnavailable);
            }
            Ok((sums(&terms)?, Engine::Sums))
        }
        Engine::Both => {
            let m = march(&terms)?;
            if pi.x2 != 1 {
                return Ok((m, Engine::March));
            }
            let s = sums(&terms)?;
            let diff = m.value.sub(&s.value).abs_f64();
            if diff > 10.0 * (m.err + s.err) + 1e-30 {
                return Err(EvalError::Disagreement { diff, march_err: m.err, sums_err: s.err });
            }
            Ok((m, Engine::Both))
        }
    }
}

/// Evaluates a series specification through the integral pipeline.
pub fn evaluate_series(spec: &SeriesSpec, digits: u32) -> Result<Evaluation, EvalError> {
    evaluate_series_with(spec, &EvalOptions { digits, ..Default::default() })
}

/// A series as `constant + Σ c · integral + Σ c · bundle piece`, the bundle
/// pieces diverging individually at `x = 1`.
#[derive(Clone, Debug)]
pub struct CompiledSeries {
    pub constant: GaussianRational,
    pub parts: Vec<(GaussianRational, PrefactoredIntegral)>,
    pub bundle: Vec<(GaussianRational, SeriesSpec)>,
}

/// Validates, normalizes and compiles a series specification.
pub fn compile_series(spec: &SeriesSpec) -> Result<CompiledSeries, EvalError> {
    let v = validate(spec);
    if !v.is_empty() {
        return Err(EvalError::Invalid(v));
    }
    if spec.x2 <= 0 || spec.x2 > 1 {
        return Err(EvalError::OutOfRange(spec.x2.clone()));
    }
    let combo = canonicalize(spec)?;
    if spec.binom_power == 2 {
        let canonical = || -> Result<Vec<(GaussianRational, PrefactoredIntegral)>, EvalError> {
            if combo.contains_divergent_piece {
                return Err(EvalError::Compile(CompileError::HeadTooSmall));
            }
            combo.terms.iter().map(|t| Ok((t.coeff.clone(), compile_squared(&t.spec)?))).collect()
        };
        return Ok(match canonical() {
            Ok(parts) => CompiledSeries { constant: combo.constant.clone(), parts, bundle: Vec::new() },
            // the native rules apply to the original spec when it has native junctions
            Err(_) => CompiledSeries {
                constant: GaussianRational::zero(),
                parts: vec![(GaussianRational::one(), compile_squared_with(spec, Mode::Native)?)],
                bundle: Vec::new(),
            },
        });
    }
    let parts = combo.terms.iter().filter(|t| !t.divergent).map(|t| Ok((t.coeff.clone(), compile(&t.spec)?))).collect::<Result<_, EvalError>>()?;
    let bundle = combo.bundle().map(|t| (t.coeff.clone(), t.spec.clone())).collect();
    Ok(CompiledSeries { constant: combo.constant, parts, bundle })
}

/// [`evaluate_series`] with explicit options.
pub fn evaluate_series_with(spec: &SeriesSpec, opts: &EvalOptions) -> Result<Evaluation, EvalError> {
    let compiled = compile_series(spec)?;
    let prec = bits_for_digits(opts.digits);
    let mut acc = compiled.constant.to_cx(prec);
    let mut err = 0.0;
    let mut count = 0;
    let mut engine = opts.engine;
    for (c, pi) in &compiled.parts {
        count += pi.terms.len();
        let (v, e) = evaluate_pi(pi, opts.digits, opts.engine)?;
        engine = e;
        add_scaled(&mut acc, &mut err, c, &v);
    }
    let mut limit = None;
    if !compiled.bundle.is_empty() {
        let info = bundle_limit(&compiled.bundle, opts)?;
        add_scaled(&mut acc, &mut err, &GaussianRational::one(), &info.value);
        count += info.bundle_terms;
        engine = Engine::March;
        limit = Some(info);
    }
    Ok(Evaluation { value: HPComplex::new(acc, err), engine, terms: count, limit })
}

fn add_scaled(acc: &mut Cx, err: &mut f64, c: &GaussianRational, v: &HPComplex) {
    let prec = acc.prec();
    acc.add_assign(&c.to_cx(prec).mul(&v.value));
    *err += v.err * c.to_cx(53).abs_f64().max(1.0);
}

/// Bundle value `Σ c · spec(x_k)` at `x_k = 1 − 2^{−k}`; pieces need not be canonical.
pub fn bundle_at(bundle: &[(GaussianRational, SeriesSpec)], k: u32, digits: u32) -> Result<(HPComplex, usize), EvalError> {
    let prec = bits_for_digits(digits);
    let xk = one_minus_pow2(k);
    let x2 = Rational::from(xk.square_ref());
    let opts = EvalOptions { digits, engine: Engine::March, ladder: None };
    let mut acc = Cx::zero(prec);
    let mut err = 0.0;
    let mut count = 0;
    for (c, s) in bundle {
        let e = evaluate_series_with(&s.clone().with_x2(x2.clone()), &opts)?;
        count += e.terms;
        add_scaled(&mut acc, &mut err, c, &e.value);
    }
    Ok((HPComplex::new(acc, err), count))
}

fn one_minus_pow2(k: u32) -> Rational {
    Rational::from(1) - Rational::from((rug::Integer::from(1), rug::Integer::from(1) << k))
}

/// Terms `ε^e log^j ε` of the expansion of a bundle at `ε = √(1 − x²) → 0`:
/// even powers are analytic, odd powers carry logarithms up to `logs`.
pub fn limit_basis(logs: u32, count: usize) -> Vec<(f64, u32)> {
    let mut out = Vec::new();
    let mut e = 1u32;
    while out.len() < count {
        if e % 2 == 1 {
            for j in (0..=logs).rev() {
                out.push((e as f64, j));
            }
        } else {
            out.push((e as f64, 0));
        }
        e += 1;
    }
    out.truncate(count);
    out
}

/// Extrapolates a divergent bundle to `x = 1`.
pub fn bundle_limit(bundle: &[(GaussianRational, SeriesSpec)], opts: &EvalOptions) -> Result<LimitInfo, EvalError> {
    let logs = bundle.iter().map(|(_, s)| s.weight()).max().unwrap_or(1);
    let run = |ladder: &[u32], digits: u32| -> Result<(HPComplex, usize), EvalError> {
        let prec = bits_for_digits(digits);
        let mut re = Vec::new();
        let mut im = Vec::new();
        let mut count = 0;
        for &k in ladder {
            let (v, c) = bundle_at(bundle, k, digits)?;
            count = c;
            let x = Float::with_val(prec, &one_minus_pow2(k));
            let eps = Float::with_val(prec, 1u32 - Float::with_val(prec, x.square_ref())).sqrt();
            let n = eps.recip();
            re.push((n.clone(), HPReal::new(v.value.re.clone(), v.err)));
            im.push((n, HPReal::new(v.value.im.clone(), v.err)));
        }
        let basis = limit_basis(logs, ladder.len());
        let r = extrapolate_with_basis(&re, &basis)?;
        let i = extrapolate_with_basis(&im, &basis)?;
        Ok((HPComplex::new(Cx { re: r.value.value, im: i.value.value }, r.value.err.hypot(i.value.err)), count))
    };
    let target = 10f64.powi(-(opts.digits as i32) / 3).min(1e-10);
    let (ladder, (value, count)) = match &opts.ladder {
        Some(l) => (l.clone(), run(l, opts.digits)?),
        None => {
            let first = run(&DEFAULT_LADDER, opts.digits);
            match first {
                Ok(v) if v.0.err <= target => (DEFAULT_LADDER.to_vec(), v),
                _ => {
                    let digits = opts.digits.max(40) + 20;
                    (DEEP_LADDER.to_vec(), run(&DEEP_LADDER, digits)?)
                }
            }
        }
    };
    Ok(LimitInfo { ladder, bundle_terms: count, value })
}
