use apery_numerics::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Parity form of a summation index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    /// 2n
    #[serde(rename = "e")]
    E,
    /// 2n+1
    #[serde(rename = "o+")]
    OPlus,
    /// 2n-1
    #[serde(rename = "o-")]
    OMinus,
    /// n, i.e. 2^s times the E form
    #[serde(rename = "n")]
    N,
}

impl Form {
    /// `l(n) = a n + b` as `(a, b)`.
    pub fn affine(self) -> (i64, i64) {
        match self {
            Form::E => (2, 0),
            Form::OPlus => (2, 1),
            Form::OMinus => (2, -1),
            Form::N => (1, 0),
        }
    }

    pub fn eval(self, n: i64) -> i64 {
        let (a, b) = self.affine();
        a * n + b
    }

    /// Junction below an index of this form in the block rules.
    pub fn native_junction(self) -> Junction {
        match self {
            Form::OPlus => Junction::Weak,
            _ => Junction::Strict,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Form::E => "e",
            Form::OPlus => "o+",
            Form::OMinus => "o-",
            Form::N => "n",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Junction {
    Strict,
    Weak,
}

impl Junction {
    pub fn symbol(self) -> &'static str {
        match self {
            Junction::Strict => ">",
            Junction::Weak => ">=",
        }
    }

    pub fn flip(self) -> Junction {
        match self {
            Junction::Strict => Junction::Weak,
            Junction::Weak => Junction::Strict,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub form: Form,
    pub exp: u32,
}

/// `Σ_{n1 ≻ n2 ≻ … ≻ nd ≻ 0} b_{n1}(x)^p / Π l_j(n_j)^{s_j}` with junction j
/// between `n_j` and `n_{j+1}` (junction d against 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub factors: Vec<Factor>,
    pub junctions: Vec<Junction>,
    pub binom_power: u8,
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub x2: Rational,
}

fn ser_rat<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn de_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    Rational::from_str(s.trim()).map_err(serde::de::Error::custom)
}

impl SeriesSpec {
    pub fn new(factors: Vec<Factor>, junctions: Vec<Junction>) -> Self {
        SeriesSpec { factors, junctions, binom_power: 1, x2: Rational::from(1) }
    }

    pub fn with_x2(mut self, x2: Rational) -> Self {
        self.x2 = x2;
        self
    }

    pub fn with_binom_power(mut self, p: u8) -> Self {
        self.binom_power = p;
        self
    }

    pub fn depth(&self) -> usize {
        self.factors.len()
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.exp).sum()
    }

    /// Body in DSL syntax, without the evaluation point.
    pub fn dsl(&self) -> String {
        let mut s = String::new();
        for (f, j) in self.factors.iter().zip(&self.junctions) {
            s.push_str(&format!("{}:{} {} ", f.form.tag(), f.exp, j.symbol()));
        }
        s.push('0');
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dsl())?;
        if self.binom_power != 1 {
            write!(f, " [b^{}]", self.binom_power)?;
        }
        if self.x2 != 1 {
            write!(f, " @ x2={}", self.x2)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Factor(Form, u32),
    Junction(Junction),
    Zero,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, Vec<SyntaxError>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c == '>' {
            if chars.get(i + 1) == Some(&'=') {
                out.push((start, Tok::Junction(Junction::Weak)));
                i += 2;
            } else {
                out.push((start, Tok::Junction(Junction::Strict)));
                i += 1;
            }
            continue;
        }
        if c == '0' && !chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()) {
            out.push((start, Tok::Zero));
            i += 1;
            continue;
        }
        // factor: tag ":" int
        let mut tag = String::new();
        while i < chars.len() && !chars[i].is_whitespace() && chars[i] != ':' && chars[i] != '>' {
            tag.push(chars[i]);
            i += 1;
        }
        let form = match tag.to_ascii_lowercase().as_str() {
            "e" => Some(Form::E),
            "o+" => Some(Form::OPlus),
            "o-" => Some(Form::OMinus),
            "n" => Some(Form::N),
            _ => None,
        };
        let Some(form) = form else {
            errs.push(SyntaxError { pos: start, msg: format!("unknown form tag {tag:?}") });
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '>' {
                i += 1;
            }
            continue;
        };
        if chars.get(i) != Some(&':') {
            errs.push(SyntaxError { pos: i, msg: "expected ':' after form tag".into() });
            continue;
        }
        i += 1;
        let num_start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[num_start..i].iter().collect();
        match digits.parse::<u32>() {
            Ok(0) => errs.push(SyntaxError { pos: num_start, msg: "exponent must be positive".into() }),
            Ok(e) => out.push((start, Tok::Factor(form, e))),
            Err(_) => errs.push(SyntaxError { pos: num_start, msg: "expected exponent".into() }),
        }
    }
    if errs.is_empty() {
        Ok(out)
    } else {
        Err(errs)
    }
}

/// Parses `factor (">"|">=") factor … (">"|">=") "0"`; factor = `e|o+|o-|n ":" int`.
/// The evaluation point defaults to x² = 1 and the binomial power to 1.
pub fn parse_spec(text: &str) -> Result<SeriesSpec, Vec<SyntaxError>> {
    let toks = tokenize(text)?;
    let mut errs = Vec::new();
    let mut factors = Vec::new();
    let mut junctions = Vec::new();
    let mut idx = 0;
    let end = text.chars().count();
    loop {
        match toks.get(idx) {
            Some((_, Tok::Factor(form, e))) => factors.push(Factor { form: *form, exp: *e }),
            Some((p, _)) => {
                errs.push(SyntaxError { pos: *p, msg: "expected factor".into() });
                break;
            }
            None => {
                errs.push(SyntaxError { pos: end, msg: "expected factor".into() });
                break;
            }
        }
        idx += 1;
        match toks.get(idx) {
            Some((_, Tok::Junction(j))) => junctions.push(*j),
            Some((p, _)) => {
                errs.push(SyntaxError { pos: *p, msg: "expected '>' or '>='".into() });
                break;
            }
            None => {
                errs.push(SyntaxError { pos: end, msg: "missing terminator '> 0' or '>= 0'".into() });
                break;
            }
        }
        idx += 1;
        if let Some((_, Tok::Zero)) = toks.get(idx) {
            idx += 1;
            if let Some((p, _)) = toks.get(idx) {
                errs.push(SyntaxError { pos: *p, msg: "unexpected input after terminator".into() });
            }
            break;
        }
    }
    if errs.is_empty() {
        Ok(SeriesSpec::new(factors, junctions))
    } else {
        Err(errs)
    }
}

impl FromStr for SeriesSpec {
    type Err = Vec<SyntaxError>;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("depth must be at least 1")]
    Empty,
    #[error("junction count {junctions} does not match depth {depth}")]
    JunctionCount { depth: usize, junctions: usize },
    #[error("exponent of factor {0} must be positive")]
    ZeroExponent(usize),
    #[error("binomial power must be 1 or 2")]
    BinomPower,
    #[error("|x2| must be at most 1")]
    PointOutOfRange,
    #[error("series undefined: junction {0} (after the last non-O+ factor) must be strict")]
    Undefined(usize),
    #[error("s1>={0} required at |x2|=1")]
    Divergent(u32),
}

/// Definedness and convergence checks; empty iff the series converges.
pub fn validate(spec: &SeriesSpec) -> Vec<Violation> {
    let mut v = Vec::new();
    let d = spec.depth();
    if d == 0 {
        v.push(Violation::Empty);
        return v;
    }
    if spec.junctions.len() != d {
        v.push(Violation::JunctionCount { depth: d, junctions: spec.junctions.len() });
        return v;
    }
    for (i, f) in spec.factors.iter().enumerate() {
        if f.exp == 0 {
            v.push(Violation::ZeroExponent(i + 1));
        }
    }
    if !(1..=2).contains(&spec.binom_power) {
        v.push(Violation::BinomPower);
    }
    if Rational::from(spec.x2.abs_ref()) > 1 {
        v.push(Violation::PointOutOfRange);
    }
    if let Some(q) = spec.factors.iter().rposition(|f| f.form != Form::OPlus) {
        if spec.junctions[q] != Junction::Strict {
            v.push(Violation::Undefined(q + 1));
        }
    }
    if Rational::from(spec.x2.abs_ref()) == 1 {
        let need = if spec.binom_power == 2 { 3 } else { 2 };
        if spec.factors[0].exp < need {
            v.push(Violation::Divergent(need));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_s() {
        let s = parse_spec("n:2 >= o+:1 >= o-:1 > 0").unwrap();
        assert_eq!(s.depth(), 3);
        assert_eq!(s.factors[0], Factor { form: Form::N, exp: 2 });
        assert_eq!(s.junctions, vec![Junction::Weak, Junction::Weak, Junction::Strict]);
        assert_eq!(s.dsl(), "n:2 >= o+:1 >= o-:1 > 0");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_spec("x:2 > 0").unwrap_err();
        assert_eq!(e[0].pos, 0);
        assert!(parse_spec("e:0 > 0").is_err());
        let e = parse_spec("e:2 >").unwrap_err();
        assert!(e[0].msg.contains("factor"));
        let e = parse_spec("e:2").unwrap_err();
        assert!(e[0].msg.contains("terminator"));
    }
}
