use crate::prefactor::Prefactor;
use apery_normalizer::is_canonical;
use apery_numerics::{GaussianRational, Rational};
use apery_series::{Form, SeriesSpec};
use apery_words::{OmegaLetter, OmegaWord, Word, WordSum};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use OmegaLetter::{W0, W1, W2, W20, W3, W5, W8};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("spec is not canonical: {0}")]
    NotCanonical(String),
    #[error("junctions do not match the block rules: {0}")]
    NotNative(String),
    #[error("binomial power {0} not supported by this rule set")]
    BinomPower(u8),
    #[error("head exponent 1 has a singular prefactor at x^2 = 1, use limit mode")]
    SingularPrefactor,
    #[error("squared binomial needs head exponent >= 3")]
    HeadTooSmall,
    #[error("squared binomial rules hold only at x^2 = 1")]
    SquaredOffUnitPoint,
    #[error("evaluation point must satisfy 0 < x^2 <= 1")]
    PointOutOfRange,
}

/// Which specs the compiler accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Canonical specs only; words never contain ω5.
    Canonical,
    /// `o-` blocks anywhere with native junctions; middles may emit ω5.
    Native,
}

/// `coeff · prefactor(x) · ∫_0^x word`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiTerm {
    pub coeff: GaussianRational,
    pub prefactor: Prefactor,
    pub word: OmegaWord,
}

/// Sum of prefactor-weighted iterated integrals over `[0, x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefactoredIntegral {
    pub terms: Vec<PiTerm>,
    #[serde(with = "rat_str")]
    pub x2: Rational,
}

mod rat_str {
    use apery_numerics::Rational;
    use serde::{Deserialize, Deserializer, Serializer};
    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl PrefactoredIntegral {
    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: &GaussianRational) -> PrefactoredIntegral {
        let terms = self.terms.iter().map(|t| PiTerm { coeff: c * &t.coeff, ..t.clone() }).collect();
        PrefactoredIntegral { terms, x2: self.x2.clone() }
    }

    /// The words grouped by prefactor.
    pub fn by_prefactor(&self) -> Vec<(Prefactor, WordSum<OmegaLetter>)> {
        let mut out: Vec<(Prefactor, WordSum<OmegaLetter>)> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|(p, _)| *p == t.prefactor) {
                Some((_, ws)) => ws.add_term(t.coeff.clone(), t.word.clone()),
                None => out.push((t.prefactor, WordSum::term(t.coeff.clone(), t.word.clone()))),
            }
        }
        out
    }
}

impl fmt::Display for PrefactoredIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            let l = t.word.letters();
            let body = Word(l[..l.len().saturating_sub(1)].to_vec());
            if body.is_empty() {
                writeln!(f, "({}) [{}] | w1", t.coeff, t.prefactor)?;
            } else {
                writeln!(f, "({}) [{}] {} | w1", t.coeff, t.prefactor, body)?;
            }
        }
        Ok(())
    }
}

fn w0_pow(k: u32) -> Vec<OmegaLetter> {
    vec![W0; k as usize]
}

fn word(parts: &[&[OmegaLetter]]) -> OmegaWord {
    Word(parts.concat())
}

type Head = Vec<(GaussianRational, Prefactor, OmegaWord)>;

fn one() -> GaussianRational {
    GaussianRational::one()
}

fn head_rule(form: Form, s: u32) -> Head {
    match (form, s) {
        (Form::E, 1) => vec![(one(), Prefactor::F2, Word::empty())],
        (Form::E, _) => vec![(one(), Prefactor::F1, word(&[&w0_pow(s - 2), &[W1]]))],
        (Form::OPlus, 1) => vec![(one(), Prefactor::F20, Word::empty())],
        (Form::OPlus, _) => vec![(one(), Prefactor::F3, word(&[&w0_pow(s - 2), &[W3]]))],
        (Form::OMinus, 1) => vec![(one(), Prefactor::F5, word(&[&[W3]])), (one(), Prefactor::F2, Word::empty())],
        (Form::OMinus, _) => vec![
            (one(), Prefactor::F5, word(&[&w0_pow(s - 1), &[W3]])),
            (one(), Prefactor::F5, word(&[&w0_pow(s - 2), &[W3]])),
        ],
        (Form::N, _) => unreachable!("alias forms are rescaled before compiling"),
    }
}

/// Head words for `b_n^2`, all with prefactor 1 at `x = 1`.
fn squared_head_rule(form: Form, s: u32) -> Head {
    let tail = w0_pow(s - 3);
    match form {
        Form::E => vec![(one(), Prefactor::F1, word(&[&[W3], &tail, &[W1]]))],
        Form::OPlus => vec![(one(), Prefactor::F1, word(&[&[W1], &tail, &[W3]]))],
        // ω1 (ω0 + 1)^2 ω0^{s-3} ω3
        Form::OMinus => vec![
            (one(), Prefactor::F1, word(&[&[W1, W0, W0], &tail, &[W3]])),
            (GaussianRational::from(2), Prefactor::F1, word(&[&[W1, W0], &tail, &[W3]])),
            (one(), Prefactor::F1, word(&[&[W1], &tail, &[W3]])),
        ],
        Form::N => unreachable!("alias forms are rescaled before compiling"),
    }
}

/// Middle block: the head rule with its prefactor absorbed into a leading ω1.
fn middle_rule(form: Form, s: u32) -> WordSum<OmegaLetter> {
    let mut out = WordSum::zero();
    match (form, s) {
        (Form::E, 1) => out.add_term(one(), Word(vec![W2])),
        (Form::E, _) => out.add_term(one(), word(&[&[W1], &w0_pow(s - 2), &[W1]])),
        (Form::OPlus, 1) => out.add_term(one(), Word(vec![W20])),
        (Form::OPlus, _) => out.add_term(one(), word(&[&[W3], &w0_pow(s - 2), &[W3]])),
        (Form::OMinus, 1) => {
            out.add_term(one(), Word(vec![W5, W3]));
            out.add_term(one(), Word(vec![W2]));
        }
        (Form::OMinus, _) => {
            out.add_term(one(), word(&[&[W5], &w0_pow(s - 1), &[W3]]));
            out.add_term(one(), word(&[&[W5], &w0_pow(s - 2), &[W3]]));
        }
        (Form::N, _) => unreachable!("alias forms are rescaled before compiling"),
    }
    out
}

fn check_shape(spec: &SeriesSpec, mode: Mode) -> Result<(), CompileError> {
    match mode {
        Mode::Canonical if !is_canonical(spec) => Err(CompileError::NotCanonical(spec.dsl())),
        Mode::Native
            if spec.factors.iter().zip(&spec.junctions).any(|(f, j)| f.form == Form::N || *j != f.form.native_junction()) =>
        {
            Err(CompileError::NotNative(spec.dsl()))
        }
        _ => Ok(()),
    }
}

fn assemble(spec: &SeriesSpec, head: Head, mode: Mode) -> PrefactoredIntegral {
    let mut rest = WordSum::from_word(Word::empty());
    for f in &spec.factors[1..] {
        rest = rest.concat(&middle_rule(f.form, f.exp));
    }
    rest = rest.concat(&WordSum::from_word(Word(vec![W1])));
    let mut terms: Vec<PiTerm> = Vec::new();
    for (c, p, w) in head {
        let full = WordSum::from_word(w).concat(&rest);
        for (word, k) in full.iter() {
            if mode == Mode::Canonical {
                assert!(word.count(&W5) == 0 && word.count(&OmegaLetter::Wdt) == 0, "canonical output must not contain w5 or wdt");
            }
            let coeff = &c * k;
            match terms.iter_mut().find(|t| t.prefactor == p && t.word == *word) {
                Some(t) => t.coeff += &coeff,
                None => terms.push(PiTerm { coeff, prefactor: p, word: word.clone() }),
            }
        }
    }
    terms.retain(|t| !t.coeff.is_zero());
    PrefactoredIntegral { terms, x2: spec.x2.clone() }
}

/// Block-rule compilation of a spec with `b_n` to prefactored words over `[0, x]`.
pub fn compile_with(spec: &SeriesSpec, mode: Mode) -> Result<PrefactoredIntegral, CompileError> {
    if spec.binom_power != 1 {
        return Err(CompileError::BinomPower(spec.binom_power));
    }
    if spec.x2 <= 0 || spec.x2 > 1 {
        return Err(CompileError::PointOutOfRange);
    }
    check_shape(spec, mode)?;
    let h = spec.factors[0];
    let head = head_rule(h.form, h.exp);
    if spec.x2 == 1 && head.iter().any(|(_, p, _)| !p.finite_at_one()) {
        return Err(CompileError::SingularPrefactor);
    }
    Ok(assemble(spec, head, mode))
}

/// [`compile_with`] in canonical mode.
pub fn compile(spec: &SeriesSpec) -> Result<PrefactoredIntegral, CompileError> {
    compile_with(spec, Mode::Canonical)
}

/// Compilation of a spec with `b_n^2` at `x = 1`, using
/// `b_n/(2n+1) = ∫_0^1 t^{2n+1}/√(1−t²) dt` on the head.
pub fn compile_squared_with(spec: &SeriesSpec, mode: Mode) -> Result<PrefactoredIntegral, CompileError> {
    if spec.binom_power != 2 {
        return Err(CompileError::BinomPower(spec.binom_power));
    }
    if spec.x2 != 1 {
        return Err(CompileError::SquaredOffUnitPoint);
    }
    check_shape(spec, mode)?;
    let h = spec.factors[0];
    if h.exp < 3 {
        return Err(CompileError::HeadTooSmall);
    }
    Ok(assemble(spec, squared_head_rule(h.form, h.exp), mode))
}

/// [`compile_squared_with`] in canonical mode.
pub fn compile_squared(spec: &SeriesSpec) -> Result<PrefactoredIntegral, CompileError> {
    compile_squared_with(spec, Mode::Canonical)
}

/// `ω0^{s1−1} ω2 … ω0^{sd−1} ω8`, whose integral over `[0, x]` is
/// `Σ_{n1 > … > nd ≥ 0} x^{2n1+1} / Π (2n_j+1)^{s_j}`.
pub fn odd_power_word(s: &[u32]) -> OmegaWord {
    let mut v = Vec::new();
    for (k, &e) in s.iter().enumerate() {
        v.extend(w0_pow(e - 1));
        v.push(if k + 1 == s.len() { W8 } else { W2 });
    }
    Word(v)
}
