use crate::cx::Cx;
use crate::hp::HPComplex;
use rug::ops::NegAssign;
use rug::Float;
use thiserror::Error;

/// Elementary function selector. `Pow` carries the exponent.
#[derive(Clone, Debug)]
pub enum ElemFn {
    Exp,
    Log,
    Atan,
    Asin,
    Sqrt,
    Pow(Cx),
}

#[derive(Debug, Error, PartialEq)]
pub enum ElemError {
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("non-finite input")]
    NonFinite,
}

fn ulp(prec: u32) -> f64 {
    2f64.powi(-(prec.min(1000) as i32))
}

/// Evaluates `f(z)` on the principal branch.
pub fn elementary(f: &ElemFn, z: &HPComplex) -> Result<HPComplex, ElemError> {
    let v = &z.value;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(ElemError::NonFinite);
    }
    let prec = v.prec();
    let (value, deriv) = match f {
        ElemFn::Exp => {
            let e = exp(v);
            let d = e.abs_f64();
            (e, d)
        }
        ElemFn::Log => {
            if v.is_zero() {
                return Err(ElemError::Domain("log(0)".into()));
            }
            (log(v), 1.0 / v.abs_f64())
        }
        ElemFn::Sqrt => {
            let s = sqrt(v);
            let d = if s.is_zero() { 0.0 } else { 0.5 / s.abs_f64() };
            (s, d)
        }
        ElemFn::Atan => {
            let one_plus_z2 = Cx::one(prec).add(&v.mul(v));
            if one_plus_z2.is_zero() {
                return Err(ElemError::Domain("atan(±i)".into()));
            }
            (atan(v), 1.0 / one_plus_z2.abs_f64())
        }
        ElemFn::Asin => {
            let one_minus_z2 = Cx::one(prec).sub(&v.mul(v));
            let d = if one_minus_z2.is_zero() { f64::INFINITY } else { 1.0 / one_minus_z2.abs_f64().sqrt() };
            (asin(v), d)
        }
        ElemFn::Pow(w) => {
            if v.is_zero() {
                if w.re.is_sign_positive() && !w.re.is_zero() {
                    return Ok(HPComplex::new(Cx::zero(prec), z.err));
                }
                return Err(ElemError::Domain("pow(0, w) with Re w <= 0".into()));
            }
            let l = log(v);
            let r = exp(&l.mul(&w.with_prec(prec)));
            let d = r.abs_f64() * w.abs_f64() / v.abs_f64();
            (r, d)
        }
    };
    let err = if z.err == 0.0 { 0.0 } else { deriv * z.err };
    let err = err + value.abs_f64() * ulp(prec) * 4.0;
    Ok(HPComplex::new(value, err))
}

pub(crate) fn exp(v: &Cx) -> Cx {
    let p = v.prec();
    let m = Float::with_val(p, v.re.exp_ref());
    if v.im.is_zero() {
        return Cx::from_real(m);
    }
    let (s, c) = Float::with_val(p, &v.im).sin_cos(Float::new(p));
    Cx { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
}

pub(crate) fn log(v: &Cx) -> Cx {
    let p = v.prec();
    if v.im.is_zero() && v.re.is_sign_positive() {
        return Cx::from_real(Float::with_val(p, v.re.ln_ref()));
    }
    let r = v.abs();
    Cx { re: r.ln(), im: v.arg() }
}

pub(crate) fn sqrt(v: &Cx) -> Cx {
    let p = v.prec();
    if v.im.is_zero() {
        if v.re.is_sign_positive() || v.re.is_zero() {
            return Cx::from_real(Float::with_val(p, v.re.sqrt_ref()));
        }
        let mut neg = v.re.clone();
        neg.neg_assign();
        return Cx { re: Float::new(p), im: neg.sqrt() };
    }
    let r = v.abs();
    let re = (Float::with_val(p, &r + &v.re) / 2u32).sqrt();
    let mut im = (Float::with_val(p, &r - &v.re) / 2u32).sqrt();
    if v.im.is_sign_negative() {
        im.neg_assign();
    }
    Cx { re, im }
}

pub(crate) fn atan(v: &Cx) -> Cx {
    let p = v.prec();
    if v.im.is_zero() {
        return Cx::from_real(Float::with_val(p, v.re.atan_ref()));
    }
    // atan z = (i/2) [log(1 - iz) - log(1 + iz)]
    let iz = v.mul_i();
    let one = Cx::one(p);
    let d = log(&one.sub(&iz)).sub(&log(&one.add(&iz)));
    d.mul_i().div_u(2)
}

pub(crate) fn asin(v: &Cx) -> Cx {
    let p = v.prec();
    if v.im.is_zero() && v.re.clone().abs() <= 1 {
        return Cx::from_real(Float::with_val(p, v.re.asin_ref()));
    }
    // asin z = -i log(iz + sqrt(1 - z^2))
    let one = Cx::one(p);
    let s = sqrt(&one.sub(&v.mul(v)));
    let l = log(&v.mul_i().add(&s));
    l.mul_i().neg()
}
