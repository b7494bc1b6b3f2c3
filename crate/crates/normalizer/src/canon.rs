use crate::pf::{partial_fraction, LinearFormPair};
use apery_numerics::{GaussianRational, Integer, Rational};
use apery_series::{validate, Factor, Form, Junction, SeriesSpec, Violation};
use rug::ops::Pow;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("invalid spec: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("boundary term with zero denominator in `{0}`")]
    ZeroBoundary(String),
}

/// One summand of a [`SpecCombo`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboTerm {
    pub coeff: GaussianRational,
    pub spec: SeriesSpec,
    /// Diverges on its own at the evaluation point; only the bundle sum converges.
    pub divergent: bool,
}

/// `constant + Σ coeff · spec`, equal to the input series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecCombo {
    pub terms: Vec<ComboTerm>,
    pub constant: GaussianRational,
    pub contains_divergent_piece: bool,
}

impl SpecCombo {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("combo serializes")
    }

    /// Terms that must be evaluated together in limit mode.
    pub fn bundle(&self) -> impl Iterator<Item = &ComboTerm> {
        self.terms.iter().filter(|t| t.divergent)
    }
}

impl fmt::Display for SpecCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.constant.is_zero() {
            writeln!(f, "({})", self.constant)?;
        }
        for t in &self.terms {
            let mark = if t.divergent { "  [divergent piece]" } else { "" };
            writeln!(f, "({}) {}{}", t.coeff, t.spec.dsl(), mark)?;
        }
        Ok(())
    }
}

/// True when every junction is native for the factor above it, no `n` form
/// occurs and `o-` appears at most in the head.
pub fn is_canonical(spec: &SeriesSpec) -> bool {
    spec.factors.iter().enumerate().all(|(k, f)| {
        f.form != Form::N && (k == 0 || f.form != Form::OMinus) && spec.junctions[k] == f.form.native_junction()
    })
}

/// Rewrite measure: (depth, `o-` blocks below the head, non-native junctions).
pub fn measure(spec: &SeriesSpec) -> (usize, usize, usize) {
    let om = spec.factors.iter().skip(1).filter(|f| f.form == Form::OMinus).count();
    let bad = spec.factors.iter().zip(&spec.junctions).filter(|(f, j)| **j != f.form.native_junction()).count();
    (spec.depth(), om, bad)
}

/// Result of one rewrite: the replacement terms; an empty spec stands for the constant 1.
pub type Rewrite = Vec<(GaussianRational, SeriesSpec)>;

/// Applies one rewrite, or returns `None` if the spec is already canonical.
/// `n` forms must be rescaled first.
///
/// Order: weak junctions under `e`/`o-` become strict (these only split the
/// index range, so every piece stays defined), then `o-` blocks below the
/// head are shifted, then strict junctions under `o+` become weak. Each
/// phase works innermost first.
pub fn rewrite_step(spec: &SeriesSpec) -> Result<Option<Rewrite>, NormalizeError> {
    let d = spec.depth();
    for k in (0..d).rev() {
        let f = spec.factors[k];
        if f.form != Form::OPlus && spec.junctions[k] == Junction::Weak {
            return exchange(spec, k, one()).map(Some);
        }
    }
    for k in (1..d).rev() {
        if spec.factors[k].form == Form::OMinus {
            return shift_ominus(spec, k).map(Some);
        }
    }
    for k in (0..d).rev() {
        if spec.factors[k].form == Form::OPlus && spec.junctions[k] == Junction::Strict {
            return exchange(spec, k, one()).map(Some);
        }
    }
    Ok(None)
}

fn one() -> GaussianRational {
    GaussianRational::one()
}

/// Flips junction `k`: WEAK = STRICT + diag and STRICT = WEAK − diag.
fn exchange(spec: &SeriesSpec, k: usize, c: GaussianRational) -> Result<Rewrite, NormalizeError> {
    let mut main = spec.clone();
    let sign = match spec.junctions[k] {
        Junction::Weak => one(),
        Junction::Strict => -&one(),
    };
    main.junctions[k] = spec.junctions[k].flip();
    let mut out = vec![(c.clone(), main)];
    for (a, s) in diagonal(spec, k)? {
        out.push((&(&c * &sign) * &a, s));
    }
    Ok(out)
}

/// The `n_k = n_{k+1}` part (or `n_d = 0` for the last junction).
fn diagonal(spec: &SeriesSpec, k: usize) -> Result<Rewrite, NormalizeError> {
    let d = spec.depth();
    if k + 1 == d {
        let f = spec.factors[k];
        let l0 = f.form.eval(0);
        if l0 == 0 {
            return Err(NormalizeError::ZeroBoundary(spec.dsl()));
        }
        let mut rest = spec.clone();
        rest.factors.pop();
        rest.junctions.pop();
        let v = Rational::from((1, Integer::from(l0).pow(f.exp)));
        return Ok(vec![(GaussianRational::real(v), rest)]);
    }
    let (a, b) = (spec.factors[k], spec.factors[k + 1]);
    let mut base = spec.clone();
    base.junctions.remove(k);
    base.factors.remove(k + 1);
    if a.form == b.form {
        base.factors[k] = Factor { form: a.form, exp: a.exp + b.exp };
        return Ok(vec![(one(), base)]);
    }
    let pieces = partial_fraction(LinearFormPair { u: a.form, s: a.exp, v: b.form, t: b.exp }).expect("distinct rescaled forms");
    Ok(pieces
        .into_iter()
        .map(|(c, form, exp)| {
            let mut s = base.clone();
            s.factors[k] = Factor { form, exp };
            (c, s)
        })
        .collect())
}

/// `o-` at position `k > 0` below a strict junction: make junction k−1 weak,
/// then substitute `n_k = m + 1` so `2n_k − 1 = 2m + 1`.
fn shift_ominus(spec: &SeriesSpec, k: usize) -> Result<Rewrite, NormalizeError> {
    debug_assert_eq!(spec.junctions[k], Junction::Strict);
    let (c, mut cur, rest) = if spec.junctions[k - 1] == Junction::Strict {
        let ((c, main), rest) = split_first(exchange(spec, k - 1, one())?);
        (c, main, rest)
    } else {
        (one(), spec.clone(), Vec::new())
    };
    cur.factors[k].form = Form::OPlus;
    cur.junctions[k - 1] = Junction::Strict;
    cur.junctions[k] = Junction::Weak;
    let mut out = vec![(c, cur)];
    out.extend(rest);
    Ok(out)
}

fn split_first(mut v: Rewrite) -> ((GaussianRational, SeriesSpec), Rewrite) {
    let first = v.remove(0);
    (first, v)
}

/// Rescales `n` forms: `1/n^s = 2^s/(2n)^s`.
pub fn rescale_alias(spec: &SeriesSpec) -> (GaussianRational, SeriesSpec) {
    let mut out = spec.clone();
    let mut c = Integer::from(1);
    for f in &mut out.factors {
        if f.form == Form::N {
            f.form = Form::E;
            c <<= f.exp;
        }
    }
    (GaussianRational::real(Rational::from(c)), out)
}

/// Rewrites a valid spec into canonical specs with the same value.
pub fn canonicalize(spec: &SeriesSpec) -> Result<SpecCombo, NormalizeError> {
    let v = validate(spec);
    if !v.is_empty() {
        return Err(NormalizeError::Invalid(v));
    }
    let (c0, start) = rescale_alias(spec);
    let mut work = vec![(c0, start)];
    let mut constant = GaussianRational::zero();
    let mut terms: Vec<(GaussianRational, SeriesSpec)> = Vec::new();
    while let Some((c, s)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        if s.depth() == 0 {
            constant += &c;
            continue;
        }
        match rewrite_step(&s)? {
            None => match terms.iter_mut().find(|(_, t)| *t == s) {
                Some(entry) => entry.0 += &c,
                None => terms.push((c, s)),
            },
            Some(parts) => {
                for (a, p) in parts.into_iter().rev() {
                    work.push((&c * &a, p));
                }
            }
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    let terms: Vec<ComboTerm> = terms
        .into_iter()
        .map(|(coeff, spec)| {
            let divergent = validate(&spec).iter().any(|v| matches!(v, Violation::Divergent(_)));
            ComboTerm { coeff, spec, divergent }
        })
        .collect();
    let contains_divergent_piece = terms.iter().any(|t| t.divergent);
    Ok(SpecCombo { terms, constant, contains_divergent_piece })
}
