//! Shuffle regularization of `u`-words at the endpoints 1 and 0.

use crate::letters::{Root4, XLetter};
use crate::word::{Word, WordSum, XWord};
use apery_numerics::{GaussianRational, Rational};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

const X1: XLetter = XLetter::X(Root4::One);

/// True when the first letter is not `x_1` and the last is not `a`.
pub fn is_admissible(w: &XWord) -> bool {
    w.letters().first() != Some(&X1) && w.letters().last() != Some(&XLetter::A)
}

/// `Σ T1^p T0^q · w_{p,q}` with every `w_{p,q}` admissible, where `T1` stands
/// for `∫x_1` and `T0` for `∫a` under the shuffle product.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RegPolynomial {
    pub coeffs: BTreeMap<(u32, u32), WordSum<XLetter>>,
}

impl RegPolynomial {
    fn add_scaled(&mut self, c: &GaussianRational, o: &RegPolynomial, shift: (u32, u32)) {
        for (&(p, q), ws) in &o.coeffs {
            let key = (p + shift.0, q + shift.1);
            let e = self.coeffs.entry(key).or_default();
            e.add_scaled(c, ws);
            if e.is_zero() {
                self.coeffs.remove(&key);
            }
        }
    }

    /// Highest total T-degree with a nonzero coefficient.
    pub fn t_degree(&self) -> u32 {
        self.coeffs.keys().map(|(p, q)| p + q).max().unwrap_or(0)
    }

    /// The T-degree zero part, i.e. the regularized value at the endpoints.
    pub fn constant(&self) -> WordSum<XLetter> {
        self.coeffs.get(&(0, 0)).cloned().unwrap_or_default()
    }

    /// Expands `x_1^{⧢p} ⧢ w ⧢ a^{⧢q}` back into words.
    pub fn recompose(&self) -> WordSum<XLetter> {
        let mut out = WordSum::zero();
        for (&(p, q), ws) in &self.coeffs {
            let mut acc = ws.clone();
            let x1 = WordSum::from_word(Word(vec![X1]));
            let a = WordSum::from_word(Word(vec![XLetter::A]));
            for _ in 0..p {
                acc = acc.shuffle(&x1);
            }
            for _ in 0..q {
                acc = acc.shuffle(&a);
            }
            out.add_assign(&acc);
        }
        out
    }
}

impl fmt::Display for RegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, ((p, q), ws)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "T1^{p} T0^{q} [{ws}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Unique decomposition of a monomial word into admissible words times
/// shuffle powers of `x_1` (at the front) and `a` (at the back).
pub fn reg_decompose(w: &XWord) -> RegPolynomial {
    let mut memo = HashMap::new();
    reg(w, &mut memo)
}

/// [`reg_decompose`] applied linearly.
pub fn reg_decompose_sum(ws: &WordSum<XLetter>) -> RegPolynomial {
    let mut memo = HashMap::new();
    let mut out = RegPolynomial::default();
    for (w, c) in ws.iter() {
        out.add_scaled(c, &reg(w, &mut memo), (0, 0));
    }
    out
}

fn reg(w: &XWord, memo: &mut HashMap<XWord, RegPolynomial>) -> RegPolynomial {
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let l = w.letters();
    let lead = l.iter().take_while(|&&c| c == X1).count();
    let r = if lead > 0 {
        // x1^k u = (1/k)(x1 ⧢ x1^{k-1}u − Σ x1^{k-1}u') with x1 inserted deeper into u
        let k = lead;
        let rest = &l[k..];
        let mut out = RegPolynomial::default();
        let inv_k = GaussianRational::real(Rational::from((1, k as u32)));
        let shorter = Word(l[1..].to_vec());
        out.add_scaled(&inv_k, &reg(&shorter, memo), (1, 0));
        let neg = -&inv_k;
        for pos in 1..=rest.len() {
            let mut v = l[1..].to_vec();
            v.insert(k - 1 + pos, X1);
            out.add_scaled(&neg, &reg(&Word(v), memo), (0, 0));
        }
        out
    } else {
        let trail = l.iter().rev().take_while(|&&c| c == XLetter::A).count();
        if trail > 0 {
            // u a^k = (1/k)(a ⧢ u a^{k-1} − Σ u' a^{k-1}) with a inserted before u's last letter
            let k = trail;
            let ulen = l.len() - k;
            let mut out = RegPolynomial::default();
            let inv_k = GaussianRational::real(Rational::from((1, k as u32)));
            let shorter = Word(l[..l.len() - 1].to_vec());
            out.add_scaled(&inv_k, &reg(&shorter, memo), (0, 1));
            let neg = -&inv_k;
            for pos in 0..ulen {
                let mut v = l[..l.len() - 1].to_vec();
                v.insert(pos, XLetter::A);
                out.add_scaled(&neg, &reg(&Word(v), memo), (0, 0));
            }
            out
        } else {
            let mut out = RegPolynomial::default();
            out.coeffs.insert((0, 0), WordSum::from_word(w.clone()));
            out
        }
    };
    memo.insert(w.clone(), r.clone());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> XWord {
        s.parse().unwrap()
    }

    #[test]
    fn admissible_is_fixed() {
        let r = reg_decompose(&w("x+i a x-1"));
        assert_eq!(r.t_degree(), 0);
        assert_eq!(r.constant(), WordSum::from_word(w("x+i a x-1")));
    }

    #[test]
    fn pure_divergent_symbols() {
        let r = reg_decompose(&w("x+1"));
        assert_eq!(r.coeffs.len(), 1);
        assert_eq!(r.coeffs[&(1, 0)], WordSum::from_word(Word::empty()));
        let r = reg_decompose(&w("a a"));
        assert_eq!(r.coeffs[&(0, 2)], WordSum::term(GaussianRational::real(Rational::from((1, 2))), Word::empty()));
    }

    #[test]
    fn two_letter_example() {
        let r = reg_decompose(&w("x+1 x-1"));
        assert_eq!(r.coeffs[&(1, 0)], WordSum::from_word(w("x-1")));
        assert_eq!(r.coeffs[&(0, 0)], WordSum::term(GaussianRational::from(-1), w("x-1 x+1")));
    }
}
