use crate::cx::Cx;
use rug::float::Round;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Working precision in bits for `digits` decimal digits: digits·log2(10) + 64 guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

fn ulp_rel(prec: u32) -> f64 {
    2f64.powi(-(prec.min(1000) as i32))
}

/// Real value with a heuristic error estimate.
#[derive(Clone)]
pub struct HPReal {
    pub value: Float,
    pub err: f64,
}

/// Complex value with a heuristic error estimate.
#[derive(Clone)]
pub struct HPComplex {
    pub value: Cx,
    pub err: f64,
}

impl HPReal {
    pub fn new(value: Float, err: f64) -> Self {
        HPReal { value, err }
    }

    pub fn exact(value: Float) -> Self {
        HPReal { value, err: 0.0 }
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        float_to_decimal(&self.value, digits)
    }

    pub fn into_complex(self) -> HPComplex {
        HPComplex { value: Cx::from_real(self.value), err: self.err }
    }

    pub fn abs_diff(&self, other: &Float) -> f64 {
        Float::with_val(self.prec(), &self.value - other).abs().to_f64()
    }
}

impl HPComplex {
    pub fn new(value: Cx, err: f64) -> Self {
        HPComplex { value, err }
    }

    pub fn exact(value: Cx) -> Self {
        HPComplex { value, err: 0.0 }
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn re(&self) -> HPReal {
        HPReal { value: self.value.re.clone(), err: self.err }
    }

    pub fn im(&self) -> HPReal {
        HPReal { value: self.value.im.clone(), err: self.err }
    }

    pub fn abs_diff(&self, other: &Cx) -> f64 {
        self.value.sub(other).abs_f64()
    }
}

pub(crate) fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix_round(10, Some(digits.max(1)), Round::Nearest);
    normalize_exponent(&s)
}

fn normalize_exponent(s: &str) -> String {
    // MPFR writes "1.234e-5"; keep plain notation for moderate exponents.
    let Some(pos) = s.find('e') else { return s.to_string() };
    let (mant, exp) = s.split_at(pos);
    let exp: i64 = exp[1..].parse().unwrap_or(0);
    if !(-6..=20).contains(&exp) {
        return s.to_string();
    }
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let int_len = mant.find('.').unwrap_or(mant.len()) as i64 + exp;
    let body = if int_len <= 0 {
        format!("0.{}{}", "0".repeat((-int_len) as usize), digits)
    } else if int_len as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(int_len as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..int_len as usize], &digits[int_len as usize..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_decimal(d))
    }
}

impl fmt::Debug for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.to_decimal(20), self.err)
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        let re = float_to_decimal(&self.value.re, d);
        if self.value.im.is_zero() {
            return write!(f, "{re}");
        }
        let im = float_to_decimal(&self.value.im, d);
        match im.strip_prefix('-') {
            Some(abs) => write!(f, "{re} - {abs}i"),
            None => write!(f, "{re} + {im}i"),
        }
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20} ± {:.1e}", self, self.err)
    }
}

fn combine_add(a: f64, b: f64, mag: f64, prec: u32) -> f64 {
    (a + b).max(a.max(b)) + mag * ulp_rel(prec)
}

fn combine_mul(a: f64, am: f64, b: f64, bm: f64, prec: u32) -> f64 {
    let e = a * bm + b * am + a * b;
    e.max(a.max(b)) + am * bm * ulp_rel(prec)
}

macro_rules! bin_ops_real {
    ($tr:ident, $m:ident, $comb:expr) => {
        impl $tr<&HPReal> for &HPReal {
            type Output = HPReal;
            fn $m(self, o: &HPReal) -> HPReal {
                let p = self.prec().max(o.prec());
                let v = Float::with_val(p, $tr::$m(&self.value, &o.value));
                let err = $comb(self, o, &v);
                HPReal { value: v, err }
            }
        }
    };
}

bin_ops_real!(Add, add, |a: &HPReal, b: &HPReal, v: &Float| combine_add(a.err, b.err, v.to_f64().abs(), v.prec()));
bin_ops_real!(Sub, sub, |a: &HPReal, b: &HPReal, v: &Float| combine_add(a.err, b.err, v.to_f64().abs(), v.prec()));
bin_ops_real!(Mul, mul, |a: &HPReal, b: &HPReal, v: &Float| combine_mul(
    a.err,
    a.value.to_f64().abs(),
    b.err,
    b.value.to_f64().abs(),
    v.prec()
));
bin_ops_real!(Div, div, |a: &HPReal, b: &HPReal, v: &Float| {
    let bm = b.value.to_f64().abs();
    let rel = a.err / a.value.to_f64().abs().max(f64::MIN_POSITIVE) + b.err / bm;
    (v.to_f64().abs() * rel).max(a.err.max(b.err)) + v.to_f64().abs() * ulp_rel(v.prec())
});

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal { value: Float::with_val(self.prec(), -&self.value), err: self.err }
    }
}

impl Add<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn add(self, o: &HPComplex) -> HPComplex {
        let v = self.value.add(&o.value);
        let err = combine_add(self.err, o.err, v.abs_f64(), v.prec());
        HPComplex { value: v, err }
    }
}

impl Sub<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn sub(self, o: &HPComplex) -> HPComplex {
        let v = self.value.sub(&o.value);
        let err = combine_add(self.err, o.err, v.abs_f64(), v.prec());
        HPComplex { value: v, err }
    }
}

impl Mul<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn mul(self, o: &HPComplex) -> HPComplex {
        let v = self.value.mul(&o.value);
        let err = combine_mul(self.err, self.value.abs_f64(), o.err, o.value.abs_f64(), v.prec());
        HPComplex { value: v, err }
    }
}

impl Div<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn div(self, o: &HPComplex) -> HPComplex {
        let v = self.value.div(&o.value);
        let bm = o.value.abs_f64();
        let am = self.value.abs_f64().max(f64::MIN_POSITIVE);
        let rel = self.err / am + o.err / bm;
        let err = (v.abs_f64() * rel).max(self.err.max(o.err)) + v.abs_f64() * ulp_rel(v.prec());
        HPComplex { value: v, err }
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex { value: self.value.neg(), err: self.err }
    }
}
