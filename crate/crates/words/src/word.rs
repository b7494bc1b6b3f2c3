use crate::letters::{Letter, OmegaLetter, XLetter, XSymbol};
use crate::ParseWordError;
use apery_numerics::GaussianRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A word `α1 α2 … αm`, read as `∫ α1 ∘ α2 ∘ … ∘ αm` with `α1` at the upper limit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<L>(pub Vec<L>);

impl<L: Letter> Word<L> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn concat(&self, o: &Word<L>) -> Word<L> {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn push(&mut self, l: L) {
        self.0.push(l);
    }

    pub fn count(&self, l: &L) -> usize {
        self.0.iter().filter(|x| *x == l).count()
    }
}

impl<L: Letter> From<Vec<L>> for Word<L> {
    fn from(v: Vec<L>) -> Self {
        Word(v)
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated letter tags; a `|` token is a visual separator and is skipped.
impl<L: Letter> FromStr for Word<L> {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace().filter(|t| *t != "|").map(str::parse).collect::<Result<Vec<L>, _>>().map(Word)
    }
}

impl<L: Letter> Serialize for Word<L> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, L: Letter> Deserialize<'de> for Word<L> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub type OmegaWord = Word<OmegaLetter>;
pub type XWord = Word<XLetter>;
pub type XSymbolWord = Word<XSymbol>;

/// Letters reversed, with sign `(−1)^{|w|}`.
pub fn reverse_with_sign<L: Letter>(w: &Word<L>) -> (i32, Word<L>) {
    let mut v = w.0.clone();
    v.reverse();
    (if w.len().is_multiple_of(2) { 1 } else { -1 }, Word(v))
}

/// Q[i]-linear combination of words in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct WordSum<L: Letter> {
    terms: BTreeMap<Word<L>, GaussianRational>,
}

impl<L: Letter> Default for WordSum<L> {
    fn default() -> Self {
        WordSum { terms: BTreeMap::new() }
    }
}

impl<L: Letter> WordSum<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word<L>) -> Self {
        Self::term(GaussianRational::one(), w)
    }

    pub fn term(c: GaussianRational, w: Word<L>) -> Self {
        let mut s = Self::zero();
        s.add_term(c, w);
        s
    }

    pub fn add_term(&mut self, c: GaussianRational, w: Word<L>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &WordSum<L>) {
        self.add_scaled(&GaussianRational::one(), o);
    }

    pub fn add_scaled(&mut self, c: &GaussianRational, o: &WordSum<L>) {
        for (w, v) in &o.terms {
            self.add_term(c * v, w.clone());
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> WordSum<L> {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word<L>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word<L>) -> GaussianRational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Sum of the coefficients.
    pub fn coefficient_sum(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Bilinear concatenation.
    pub fn concat(&self, o: &WordSum<L>) -> WordSum<L> {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(a * b, u.concat(v));
            }
        }
        out
    }

    /// Bilinear shuffle product.
    pub fn shuffle(&self, o: &WordSum<L>) -> WordSum<L> {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_scaled(&(a * b), &shuffle(u, v));
            }
        }
        out
    }

    /// Applies a letter substitution `l ↦ Σ c·m` multilinearly.
    pub fn substitute<M: Letter>(&self, mut f: impl FnMut(&L) -> Vec<(GaussianRational, M)>) -> WordSum<M> {
        let mut out = WordSum::zero();
        for (w, c) in &self.terms {
            let mut partial: Vec<(GaussianRational, Vec<M>)> = vec![(c.clone(), Vec::new())];
            for l in &w.0 {
                let images = f(l);
                let mut next = Vec::with_capacity(partial.len() * images.len());
                for (pc, pw) in &partial {
                    for (ic, m) in &images {
                        let mut nw = pw.clone();
                        nw.push(m.clone());
                        next.push((pc * ic, nw));
                    }
                }
                partial = next;
            }
            for (pc, pw) in partial {
                out.add_term(pc, Word(pw));
            }
        }
        out
    }
}

impl<L: Letter> fmt::Display for WordSum<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        Ok(())
    }
}

impl<L: Letter> fmt::Debug for WordSum<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sum over all interleavings of `u` and `v` that keep each word's internal order.
pub fn shuffle<L: Letter>(u: &Word<L>, v: &Word<L>) -> WordSum<L> {
    let mut out = WordSum::zero();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    interleave(&u.0, &v.0, &mut buf, &mut out);
    out
}

fn interleave<L: Letter>(u: &[L], v: &[L], buf: &mut Vec<L>, out: &mut WordSum<L>) {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        out.add_term(GaussianRational::one(), Word(w));
        return;
    }
    buf.push(u[0].clone());
    interleave(&u[1..], v, buf, out);
    buf.pop();
    buf.push(v[0].clone());
    interleave(u, &v[1..], buf, out);
    buf.pop();
}

/// Replaces every composite symbol by its monomial combination.
pub fn expand_composites(ws: &WordSum<XSymbol>) -> WordSum<XLetter> {
    ws.substitute(|s| s.expansion())
}

/// Rewrites ω20 as ω0 + ω2.
pub fn expand_w20(ws: &WordSum<OmegaLetter>) -> WordSum<OmegaLetter> {
    ws.substitute(|l| match l {
        OmegaLetter::W20 => vec![(GaussianRational::one(), OmegaLetter::W0), (GaussianRational::one(), OmegaLetter::W2)],
        other => vec![(GaussianRational::one(), *other)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OmegaWord {
        s.parse().unwrap()
    }

    #[test]
    fn length_one_shuffle() {
        let s = shuffle(&w("w0"), &w("w3"));
        assert_eq!(s.to_string(), "(1) w0 w3 + (1) w3 w0");
        assert_eq!(shuffle(&w("w0 w1"), &Word::empty()), WordSum::from_word(w("w0 w1")));
    }

    #[test]
    fn self_shuffle_multiplicity() {
        let s = shuffle(&w("w1"), &w("w1"));
        assert_eq!(s.coefficient(&w("w1 w1")), GaussianRational::from(2));
    }

    #[test]
    fn reversal_sign() {
        assert_eq!(reverse_with_sign(&w("w0 w3")), (1, w("w3 w0")));
        assert_eq!(reverse_with_sign(&w("w0 w3 w1")).0, -1);
    }

    #[test]
    fn separator_is_skipped() {
        assert_eq!(w("w0 w3 | w1"), w("w0 w3 w1"));
        assert_eq!(w(""), Word::empty());
    }
}
