//! Words of nested-sum shape and the index data of the corresponding `Li_s(z)`.

use crate::letters::{Root4, XLetter};
use crate::reg::is_admissible;
use crate::word::{Word, XWord};
use crate::WordError;
use std::fmt;

/// `Li_s(z) = Σ_{n1 > … > nd > 0} Π z_j^{n_j} / n_j^{s_j}` at fourth roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiIndex {
    pub s: Vec<u32>,
    pub z: Vec<Root4>,
}

impl LiIndex {
    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    /// Convergent as a nested sum: `(s1, z1) != (1, 1)`.
    pub fn is_admissible(&self) -> bool {
        !self.s.is_empty() && !(self.s[0] == 1 && self.z[0] == Root4::One)
    }
}

impl fmt::Display for LiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(u32::to_string).collect();
        let z: Vec<&str> = self.z.iter().map(|r| match r {
            Root4::One => "1",
            Root4::I => "i",
            Root4::MinusOne => "-1",
            Root4::MinusI => "-i",
        }).collect();
        write!(f, "Li_{{{}}}({})", s.join(","), z.join(","))
    }
}

/// Reads `a^{s1−1} x_{ξ1} … a^{sd−1} x_{ξd}` as `Li_s(z)` with
/// `z1 = ξ1^{-1}` and `z_j = ξ_{j−1}/ξ_j`.
pub fn word_to_li(w: &XWord) -> Result<LiIndex, WordError> {
    if w.is_empty() || !is_admissible(w) {
        return Err(WordError::NotAdmissible(w.to_string()));
    }
    let mut s = Vec::new();
    let mut xi = Vec::new();
    let mut run = 0u32;
    for l in w.letters() {
        match l {
            XLetter::A => run += 1,
            XLetter::X(r) => {
                s.push(run + 1);
                xi.push(*r);
                run = 0;
            }
            XLetter::Q(_) => return Err(WordError::NotAdmissible(w.to_string())),
        }
    }
    let mut z = Vec::with_capacity(xi.len());
    let mut prev = Root4::One;
    for &x in &xi {
        z.push(prev.mul(x.inv()));
        prev = x;
    }
    Ok(LiIndex { s, z })
}

/// Inverse of [`word_to_li`]: `ξ_j = Π_{i ≤ j} z_i^{-1}`.
pub fn li_to_word(li: &LiIndex) -> XWord {
    let mut v = Vec::new();
    let mut xi = Root4::One;
    for (&s, &z) in li.s.iter().zip(&li.z) {
        xi = xi.mul(z.inv());
        v.extend(std::iter::repeat_n(XLetter::A, s as usize - 1));
        v.push(XLetter::X(xi));
    }
    Word(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> XWord {
        s.parse().unwrap()
    }

    #[test]
    fn depth_one() {
        assert_eq!(word_to_li(&w("x+i")).unwrap(), LiIndex { s: vec![1], z: vec![Root4::MinusI] });
        assert_eq!(word_to_li(&w("a x+i")).unwrap(), LiIndex { s: vec![2], z: vec![Root4::MinusI] });
    }

    #[test]
    fn depth_two_and_inverse() {
        let li = word_to_li(&w("x-i x-1")).unwrap();
        assert_eq!(li, LiIndex { s: vec![1, 1], z: vec![Root4::I, Root4::I] });
        assert_eq!(li_to_word(&li), w("x-i x-1"));
    }

    #[test]
    fn rejects_non_sum_shapes() {
        assert!(word_to_li(&w("x-i a")).is_err());
        assert!(word_to_li(&w("x+1 x-i")).is_err());
        assert!(word_to_li(&w("q+i")).is_err());
    }
}
