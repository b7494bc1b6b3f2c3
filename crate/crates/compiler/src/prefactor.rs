use apery_numerics::Float;
use apery_words::OmegaLetter;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Function of the upper limit multiplying a compiled integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Prefactor {
    /// 1
    #[serde(rename = "f1")]
    F1,
    /// x/√(1−x²)
    #[serde(rename = "f2")]
    F2,
    /// 1/x
    #[serde(rename = "f3")]
    F3,
    /// x
    #[serde(rename = "f5")]
    F5,
    /// 1/(x√(1−x²))
    #[serde(rename = "f20")]
    F20,
}

impl Prefactor {
    pub const ALL: [Prefactor; 5] = [Prefactor::F1, Prefactor::F2, Prefactor::F3, Prefactor::F5, Prefactor::F20];

    pub fn tag(self) -> &'static str {
        match self {
            Prefactor::F1 => "f1",
            Prefactor::F2 => "f2",
            Prefactor::F3 => "f3",
            Prefactor::F5 => "f5",
            Prefactor::F20 => "f20",
        }
    }

    /// The letter `f(t)·ω1`.
    pub fn letter(self) -> OmegaLetter {
        match self {
            Prefactor::F1 => OmegaLetter::W1,
            Prefactor::F2 => OmegaLetter::W2,
            Prefactor::F3 => OmegaLetter::W3,
            Prefactor::F5 => OmegaLetter::W5,
            Prefactor::F20 => OmegaLetter::W20,
        }
    }

    /// True when the value at `x = 1` is finite.
    pub fn finite_at_one(self) -> bool {
        !matches!(self, Prefactor::F2 | Prefactor::F20)
    }

    /// Value at `x ∈ (0, 1]`; `None` where it is singular.
    pub fn eval(self, x: &Float) -> Option<Float> {
        let p = x.prec();
        let root = || Float::with_val(p, 1u32 - Float::with_val(p, x.square_ref())).sqrt();
        let v = match self {
            Prefactor::F1 => Float::with_val(p, 1),
            Prefactor::F2 => Float::with_val(p, x / root()),
            Prefactor::F3 => Float::with_val(p, x.recip_ref()),
            Prefactor::F5 => x.clone(),
            Prefactor::F20 => Float::with_val(p, x * root()).recip(),
        };
        v.is_finite().then_some(v)
    }
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn times_w1_is_the_named_letter() {
        for t in [0.25, 0.5, 0.75] {
            let t = Float::with_val(200, t);
            for p in Prefactor::ALL {
                let lhs = p.eval(&t).unwrap() * OmegaLetter::W1.density(&t);
                let rhs = p.letter().density(&t);
                assert!((lhs - rhs).abs() < 1e-55, "{p} at {t}");
            }
        }
    }

    #[test]
    fn singular_at_one() {
        let one = Float::with_val(64, 1);
        assert!(Prefactor::F2.eval(&one).is_none());
        assert!(Prefactor::F20.eval(&one).is_none());
        assert_eq!(Prefactor::F3.eval(&one).unwrap(), 1);
    }
}
