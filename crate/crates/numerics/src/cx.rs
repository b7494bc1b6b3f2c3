use rug::ops::NegAssign;
use rug::{Assign, Float, Rational};
use std::fmt;

/// Complex number as a pair of MPFR floats sharing one precision.
///
/// This is the bare arithmetic type used in inner loops; [`crate::HPComplex`]
/// wraps it with an error estimate.
#[derive(Clone, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Cx {
    pub fn zero(prec: u32) -> Self {
        Cx { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Cx { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn i(prec: u32) -> Self {
        Cx { re: Float::new(prec), im: Float::with_val(prec, 1) }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Cx { re, im: Float::new(prec) }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cx { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rationals(prec: u32, re: &Rational, im: &Rational) -> Self {
        Cx { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn set_zero(&mut self) {
        self.re.assign(0);
        self.im.assign(0);
    }

    pub fn add(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let mut r = self.clone();
        r.mul_assign(o);
        r
    }

    pub fn neg(&self) -> Cx {
        let mut r = self.clone();
        r.re.neg_assign();
        r.im.neg_assign();
        r
    }

    pub fn conj(&self) -> Cx {
        let mut r = self.clone();
        r.im.neg_assign();
        r
    }

    pub fn add_assign(&mut self, o: &Cx) {
        self.re += &o.re;
        self.im += &o.im;
    }

    pub fn sub_assign(&mut self, o: &Cx) {
        self.re -= &o.re;
        self.im -= &o.im;
    }

    pub fn mul_assign(&mut self, o: &Cx) {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        self.re.assign(&ac - &bd);
        self.im.assign(&ad + &bc);
    }

    /// `self += a * b`, using two caller-owned scratch floats.
    pub fn add_mul(&mut self, a: &Cx, b: &Cx, t1: &mut Float, t2: &mut Float) {
        t1.assign(&a.re * &b.re);
        t2.assign(&a.im * &b.im);
        self.re += &*t1;
        self.re -= &*t2;
        t1.assign(&a.re * &b.im);
        t2.assign(&a.im * &b.re);
        self.im += &*t1;
        self.im += &*t2;
    }

    pub fn scale(&self, s: &Float) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn scale_assign(&mut self, s: &Float) {
        self.re *= s;
        self.im *= s;
    }

    pub fn scale_rational(&self, s: &Rational) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn div_u(&self, n: u32) -> Cx {
        let p = self.prec();
        Cx { re: Float::with_val(p, &self.re / n), im: Float::with_val(p, &self.im / n) }
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Cx {
        let mut re = self.im.clone();
        re.neg_assign();
        Cx { re, im: self.re.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        a + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Cx {
        let n = self.norm_sqr();
        let p = self.prec();
        let mut im = Float::with_val(p, &self.im / &n);
        im.neg_assign();
        Cx { re: Float::with_val(p, &self.re / &n), im }
    }

    pub fn div(&self, o: &Cx) -> Cx {
        self.mul(&o.recip())
    }

    pub fn set_prec(&mut self, prec: u32) {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
    }

    pub fn with_prec(&self, prec: u32) -> Cx {
        let mut c = self.clone();
        c.set_prec(prec);
        c
    }

    pub fn pow_u(&self, mut e: u32) -> Cx {
        let mut base = self.clone();
        let mut acc = Cx::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            let b2 = base.clone();
            base.mul_assign(&b2);
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
