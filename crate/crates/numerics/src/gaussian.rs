use crate::cx::Cx;
use rug::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Exact element of Q[i].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussianRational { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn real(r: impl Into<Rational>) -> Self {
        Self::new(r, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref());
        Some(Self::new(Rational::from(&self.re / &n), Rational::from(-&self.im) / n))
    }

    pub fn to_cx(&self, prec: u32) -> Cx {
        Cx::from_rationals(prec, &self.re, &self.im)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::new(v, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::new(v, 0)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(Rational::from(&self.re + &o.re), Rational::from(&self.im + &o.im))
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(Rational::from(&self.re - &o.re), Rational::from(&self.im - &o.im))
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        let re = Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re);
        GaussianRational::new(re, im)
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.recip().expect("division by zero in Q[i]")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                $tr::$m(&self, &o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |r: &Rational| -> String {
            if *r == 1 {
                "i".to_string()
            } else if *r == -1 {
                "-i".to_string()
            } else {
                format!("{r}i")
            }
        };
        match (self.re == 0, self.im == 0) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let s = im_part(&self.im);
                if s.starts_with('-') {
                    write!(f, "{}{}", self.re, s)
                } else {
                    write!(f, "{}+{}", self.re, s)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("invalid Gaussian rational: {0:?}")]
pub struct ParseGaussianError(pub String);

fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s {
        "" | "+" => Some(Rational::from(1)),
        "-" => Some(Rational::from(-1)),
        _ => Rational::from_str(s.trim_start_matches('+')).ok(),
    }
}

impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    /// Accepts `p/q`, `p/q i`, `a+bi`, `a-bi`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rat(&t).map(GaussianRational::real).ok_or_else(err);
        };
        // split at the last sign that is not the leading one
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        match split {
            Some(i) => {
                let re = parse_rat(&body[..i]).ok_or_else(err)?;
                let im = parse_rat(&body[i..]).ok_or_else(err)?;
                Ok(GaussianRational::new(re, im))
            }
            None => Ok(GaussianRational::new(0, parse_rat(body).ok_or_else(err)?)),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_roundtrip() {
        for s in ["0", "3/2", "i", "-i", "1/2+3/4i", "-2-i", "5/3i"] {
            let g: GaussianRational = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("x".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn field_ops_exact() {
        let a = GaussianRational::new(Rational::from((1, 2)), 3);
        let b = GaussianRational::new(-2, Rational::from((1, 3)));
        let q = &(&a * &b) / &b;
        assert_eq!(q, a);
        assert_eq!(GaussianRational::i_pow(2), GaussianRational::from(-1));
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from(-1));
    }
}
