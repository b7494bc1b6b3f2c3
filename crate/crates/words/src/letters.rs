use apery_numerics::{Cx, Float, GaussianRational};
use std::fmt;
use std::str::FromStr;

use crate::ParseWordError;

/// A letter that can appear in a [`crate::Word`].
pub trait Letter: Clone + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display + FromStr<Err = ParseWordError> {}

/// 1-forms on `[0, x]` in the variable `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaLetter {
    /// dt/t
    W0,
    /// dt/√(1−t²)
    W1,
    /// t dt/(1−t²)
    W2,
    /// dt/(t√(1−t²))
    W3,
    /// t dt/√(1−t²)
    W5,
    /// dt/(1−t²)
    W8,
    /// dt/(t(1−t²)) = ω0 + ω2
    W20,
    /// dt
    Wdt,
}

impl OmegaLetter {
    pub const ALL: [OmegaLetter; 8] = [
        OmegaLetter::W0,
        OmegaLetter::W1,
        OmegaLetter::W2,
        OmegaLetter::W3,
        OmegaLetter::W5,
        OmegaLetter::W8,
        OmegaLetter::W20,
        OmegaLetter::Wdt,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            OmegaLetter::W0 => "w0",
            OmegaLetter::W1 => "w1",
            OmegaLetter::W2 => "w2",
            OmegaLetter::W3 => "w3",
            OmegaLetter::W5 => "w5",
            OmegaLetter::W8 => "w8",
            OmegaLetter::W20 => "w20",
            OmegaLetter::Wdt => "wdt",
        }
    }

    /// The coefficient of `dt` at a real point `t`.
    pub fn density(self, t: &Float) -> Float {
        let p = t.prec();
        let one_minus = Float::with_val(p, 1u32 - Float::with_val(p, t.square_ref()));
        let root = Float::with_val(p, one_minus.sqrt_ref());
        match self {
            OmegaLetter::W0 => Float::with_val(p, t.recip_ref()),
            OmegaLetter::W1 => root.recip(),
            OmegaLetter::W2 => Float::with_val(p, t / &one_minus),
            OmegaLetter::W3 => Float::with_val(p, t * &root).recip(),
            OmegaLetter::W5 => Float::with_val(p, t / &root),
            OmegaLetter::W8 => one_minus.recip(),
            OmegaLetter::W20 => Float::with_val(p, t * &one_minus).recip(),
            OmegaLetter::Wdt => Float::with_val(p, 1),
        }
    }
}

impl fmt::Display for OmegaLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for OmegaLetter {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OmegaLetter::ALL.into_iter().find(|l| l.tag() == s).ok_or_else(|| ParseWordError::UnknownLetter(s.to_string()))
    }
}

impl Letter for OmegaLetter {}

/// A fourth root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Root4 {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Root4 {
    pub const ALL: [Root4; 4] = [Root4::One, Root4::I, Root4::MinusOne, Root4::MinusI];

    /// The exponent k with `self = i^k`.
    pub fn power(self) -> u8 {
        match self {
            Root4::One => 0,
            Root4::I => 1,
            Root4::MinusOne => 2,
            Root4::MinusI => 3,
        }
    }

    pub fn from_power(k: i64) -> Root4 {
        Root4::ALL[k.rem_euclid(4) as usize]
    }

    pub fn mul(self, o: Root4) -> Root4 {
        Root4::from_power(self.power() as i64 + o.power() as i64)
    }

    pub fn inv(self) -> Root4 {
        Root4::from_power(-(self.power() as i64))
    }

    pub fn value(self) -> GaussianRational {
        GaussianRational::i_pow(self.power() as i64)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Root4::One => "+1",
            Root4::I => "+i",
            Root4::MinusOne => "-1",
            Root4::MinusI => "-i",
        }
    }

    fn parse(s: &str) -> Option<Root4> {
        Root4::ALL.into_iter().find(|r| r.tag() == s)
    }
}

impl fmt::Display for Root4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Monomial 1-forms in the variable `u` after the change of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XLetter {
    /// du/u
    A,
    /// du/(ξ−u)
    X(Root4),
    /// du/(ξ−u)², only for ξ = ±i
    Q(Root4),
}

impl XLetter {
    /// The coefficient of `du` at an exact point `u` (`None` at a pole).
    pub fn density(self, u: &GaussianRational) -> Option<GaussianRational> {
        match self {
            XLetter::A => u.recip(),
            XLetter::X(xi) => (&xi.value() - u).recip(),
            XLetter::Q(xi) => (&xi.value() - u).recip().map(|r| &r * &r),
        }
    }

    /// The coefficient of `du` at a complex point.
    pub fn density_cx(self, u: &Cx) -> Cx {
        let p = u.prec();
        match self {
            XLetter::A => u.recip(),
            XLetter::X(xi) => xi.value().to_cx(p).sub(u).recip(),
            XLetter::Q(xi) => {
                let r = xi.value().to_cx(p).sub(u).recip();
                r.mul(&r)
            }
        }
    }
}

impl fmt::Display for XLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XLetter::A => f.write_str("a"),
            XLetter::X(r) => write!(f, "x{r}"),
            XLetter::Q(r) => write!(f, "q{r}"),
        }
    }
}

impl FromStr for XLetter {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseWordError::UnknownLetter(s.to_string());
        if s == "a" {
            return Ok(XLetter::A);
        }
        let (head, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let root = Root4::parse(rest).ok_or_else(bad)?;
        match head {
            "x" => Ok(XLetter::X(root)),
            "q" if matches!(root, Root4::I | Root4::MinusI) => Ok(XLetter::Q(root)),
            _ => Err(bad()),
        }
    }
}

impl Letter for XLetter {}

/// Letters of the `u`-alphabet including the composite abbreviations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XSymbol {
    Mono(XLetter),
    /// ỹ = x_{−i} + x_i − x_{−1} − x_1
    Y,
    /// z̃ = −a − x_{−i} − x_i
    Z,
    /// d_{ξ,ξ'} = x_ξ − x_ξ'
    D(Root4, Root4),
}

impl XSymbol {
    /// The monomial combination this symbol abbreviates.
    pub fn expansion(self) -> Vec<(GaussianRational, XLetter)> {
        let one = GaussianRational::one;
        let m1 = || GaussianRational::from(-1);
        match self {
            XSymbol::Mono(l) => vec![(one(), l)],
            XSymbol::Y => vec![
                (one(), XLetter::X(Root4::MinusI)),
                (one(), XLetter::X(Root4::I)),
                (m1(), XLetter::X(Root4::MinusOne)),
                (m1(), XLetter::X(Root4::One)),
            ],
            XSymbol::Z => vec![(m1(), XLetter::A), (m1(), XLetter::X(Root4::MinusI)), (m1(), XLetter::X(Root4::I))],
            XSymbol::D(a, b) => vec![(one(), XLetter::X(a)), (m1(), XLetter::X(b))],
        }
    }

    /// The coefficient of `du` at an exact point `u`.
    pub fn density(self, u: &GaussianRational) -> Option<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (c, l) in self.expansion() {
            acc += &(&c * &l.density(u)?);
        }
        Some(acc)
    }
}

impl fmt::Display for XSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XSymbol::Mono(l) => write!(f, "{l}"),
            XSymbol::Y => f.write_str("y~"),
            XSymbol::Z => f.write_str("z~"),
            XSymbol::D(a, b) => write!(f, "d[{a},{b}]"),
        }
    }
}

impl FromStr for XSymbol {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "y~" => return Ok(XSymbol::Y),
            "z~" => return Ok(XSymbol::Z),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("d[").and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner.split_once(',').ok_or_else(|| ParseWordError::UnknownLetter(s.to_string()))?;
            return match (Root4::parse(a.trim()), Root4::parse(b.trim())) {
                (Some(a), Some(b)) => Ok(XSymbol::D(a, b)),
                _ => Err(ParseWordError::UnknownLetter(s.to_string())),
            };
        }
        s.parse().map(XSymbol::Mono)
    }
}

impl Letter for XSymbol {}
