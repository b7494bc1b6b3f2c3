//! The substitution `t = (1−u²)/(1+u²)` applied to compiled words.
//!
//! A word `α1…αm` over `[0, x]` becomes `(−1)^m φ(αm)…φ(α1)` over
//! `[λ(x), 1]` with `λ(x) = √((1−x)/(1+x))`.

use apery_compiler::{Prefactor, PrefactoredIntegral};
use apery_numerics::{Float, GaussianRational, Rational};
use apery_words::{expand_composites, reg_decompose_sum, reverse_with_sign, word_to_li, LiIndex, OmegaLetter, Root4, Word, WordSum, XLetter, XSymbol, XSymbolWord, XWord};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CovError {
    #[error("word is not admissible at the endpoints: {0}")]
    NotAdmissible(String),
    #[error("regularization left a nonzero divergent coefficient: {0}")]
    DivergentRemainder(String),
    #[error("prefactor {0} is singular at x = 1")]
    SingularPrefactor(Prefactor),
}

/// `scalar · prefactor(x) · ∫_{λ(x)}^1 word`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovTerm {
    pub scalar: GaussianRational,
    pub prefactor: Prefactor,
    pub word: XSymbolWord,
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

impl CovTerm {
    /// `λ(x)` for this term's point.
    pub fn lower_limit(&self, prec: u32) -> Float {
        lambda(&Float::with_val(prec, &self.x2).sqrt())
    }
}

impl fmt::Display for CovTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) [{}] {}", self.scalar, self.prefactor, self.word)
    }
}

/// `λ(x) = √((1−x)/(1+x))`.
pub fn lambda(x: &Float) -> Float {
    let p = x.prec();
    let num = Float::with_val(p, 1u32 - x);
    let den = Float::with_val(p, 1u32 + x);
    (num / den).sqrt()
}

/// Image of an ω-letter as composite `u`-letters.
pub fn phi(l: OmegaLetter) -> Vec<(GaussianRational, XSymbol)> {
    let one = GaussianRational::one;
    let i = GaussianRational::i;
    match l {
        OmegaLetter::W0 => vec![(one(), XSymbol::Y)],
        OmegaLetter::W1 => vec![(i(), XSymbol::D(Root4::MinusI, Root4::I))],
        OmegaLetter::W2 => vec![(one(), XSymbol::Z)],
        OmegaLetter::W3 => vec![(one(), XSymbol::D(Root4::MinusOne, Root4::One))],
        OmegaLetter::W5 => vec![(one(), XSymbol::Mono(XLetter::Q(Root4::I))), (one(), XSymbol::Mono(XLetter::Q(Root4::MinusI)))],
        OmegaLetter::W8 => vec![(GaussianRational::from(-1), XSymbol::Mono(XLetter::A))],
        OmegaLetter::W20 => vec![(one(), XSymbol::Y), (one(), XSymbol::Z)],
        OmegaLetter::Wdt => vec![(i(), XSymbol::Mono(XLetter::Q(Root4::I))), (-&i(), XSymbol::Mono(XLetter::Q(Root4::MinusI)))],
    }
}

/// Reverses a word, applies φ letterwise and attaches the sign `(−1)^m`.
pub fn map_word(w: &Word<OmegaLetter>) -> WordSum<XSymbol> {
    let (sign, rev) = reverse_with_sign(w);
    WordSum::from_word(rev).substitute(|l| phi(*l)).scale(&GaussianRational::from(sign as i64))
}

/// One term per composite word, over `[λ(x), 1]`.
pub fn to_x_alphabet(pi: &PrefactoredIntegral) -> Vec<CovTerm> {
    let mut out: Vec<CovTerm> = Vec::new();
    for t in &pi.terms {
        for (w, c) in map_word(&t.word).iter() {
            let scalar = &t.coeff * c;
            match out.iter_mut().find(|o| o.prefactor == t.prefactor && o.word == *w) {
                Some(o) => o.scalar += &scalar,
                None => out.push(CovTerm { scalar, prefactor: t.prefactor, word: w.clone(), x2: pi.x2.clone() }),
            }
        }
    }
    out.retain(|t| !t.scalar.is_zero());
    out
}

/// Outcome of [`admissible_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub checked: usize,
    pub violations: Vec<XWord>,
}

impl AdmissibilityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every monomial for first letter `≠ x_1` and last letter `≠ a`.
pub fn admissible_check(ws: &WordSum<XLetter>) -> AdmissibilityReport {
    let violations = ws.iter().map(|(w, _)| w).filter(|w| !apery_words::is_admissible(w)).cloned().collect();
    AdmissibilityReport { checked: ws.len(), violations }
}

/// Expands all terms at `x = 1` into monomials, weighted by scalar and prefactor value 1.
pub fn expand_at_one(terms: &[CovTerm]) -> Result<WordSum<XLetter>, CovError> {
    let mut acc = WordSum::zero();
    for t in terms {
        if !t.prefactor.finite_at_one() {
            return Err(CovError::SingularPrefactor(t.prefactor));
        }
        acc.add_scaled(&t.scalar, &expand_composites(&WordSum::from_word(t.word.clone())));
    }
    Ok(acc)
}

/// `Σ coeff · Li_s(z)` at fourth roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CmzvExpr {
    pub terms: Vec<CmzvTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmzvTerm {
    pub coeff: GaussianRational,
    pub s: Vec<u32>,
    /// Roots as `"1"`, `"i"`, `"-1"`, `"-i"`.
    pub z: Vec<String>,
}

impl CmzvTerm {
    pub fn index(&self) -> LiIndex {
        let z = self
            .z
            .iter()
            .map(|r| match r.as_str() {
                "1" => Root4::One,
                "i" => Root4::I,
                "-1" => Root4::MinusOne,
                _ => Root4::MinusI,
            })
            .collect();
        LiIndex { s: self.s.clone(), z }
    }
}

fn root_str(r: Root4) -> String {
    match r {
        Root4::One => "1",
        Root4::I => "i",
        Root4::MinusOne => "-1",
        Root4::MinusI => "-i",
    }
    .to_string()
}

impl fmt::Display for CmzvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}) {}", t.coeff, t.index())?;
        }
        Ok(())
    }
}

/// Lowers the `x = 1` integral to multiple polylogarithm values.
///
/// Every monomial must already be admissible; the regularized
/// decomposition is checked to have no divergent part.
pub fn to_cmzv(terms: &[CovTerm]) -> Result<CmzvExpr, CovError> {
    let ws = expand_at_one(terms)?;
    let report = admissible_check(&ws);
    if let Some(w) = report.violations.first() {
        return Err(CovError::NotAdmissible(w.to_string()));
    }
    let reg = reg_decompose_sum(&ws);
    if reg.t_degree() > 0 {
        return Err(CovError::DivergentRemainder(reg.to_string()));
    }
    let mut out = CmzvExpr::default();
    for (w, c) in reg.constant().iter() {
        let li = word_to_li(w).map_err(|_| CovError::NotAdmissible(w.to_string()))?;
        out.terms.push(CmzvTerm { coeff: c.clone(), s: li.s, z: li.z.into_iter().map(root_str).collect() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_maps_to_empty_word() {
        let m = map_word(&Word::empty());
        assert_eq!(m, WordSum::from_word(Word::empty()));
    }
}
