use apery_numerics::{Cx, Float};

/// Classical polylogarithm `Li_s(z)` for integer `s ≥ 1`.
///
/// Direct power series for |z| ≤ 1/2, otherwise the expansion in
/// `μ = log z` (valid for |μ| < 2π). Returns `None` outside that range or at
/// the pole `s = 1, z = 1`.
pub fn polylog(s: u32, z: &Cx) -> Option<Cx> {
    let prec = z.prec();
    let eps = Float::with_val(prec, Float::with_val(prec, 1) >> (prec as i32 - 4));
    let absz = z.abs();
    if absz <= 0.5 {
        let mut acc = Cx::zero(prec);
        let mut zn = z.clone();
        for n in 1u32.. {
            let t = zn.scale(&Float::with_val(prec, Float::with_val(prec, n).pow(s)).recip());
            acc.add_assign(&t);
            if t.abs() < eps {
                break;
            }
            zn.mul_assign(z);
        }
        return Some(acc);
    }
    let mu = log(z);
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    if mu.abs() >= two_pi {
        return None;
    }
    if s == 1 {
        let one_minus = Cx::one(prec).sub(z);
        if one_minus.is_zero() {
            return None;
        }
        return Some(log(&one_minus).neg());
    }
    let mut acc = Cx::zero(prec);
    let mut pw = Cx::one(prec); // mu^k / k!
    let mut k = 0u32;
    let mut small = 0;
    loop {
        if k == s - 1 {
            let mut h = Float::new(prec);
            for j in 1..s {
                h += Float::with_val(prec, 1) / j;
            }
            let neg_mu = mu.neg();
            let t = Cx::from_real(h).sub(&log(&neg_mu));
            acc.add_assign(&pw.mul(&t));
        } else {
            let arg = s as i64 - k as i64;
            let zeta = Float::with_val(prec, arg).zeta();
            let t = pw.scale(&zeta);
            let tiny = t.abs() < eps;
            acc.add_assign(&t);
            if tiny && k > s {
                small += 1;
                if small > 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        k += 1;
        pw.mul_assign(&mu);
        pw = pw.div_u(k);
        if k > 20000 {
            return None;
        }
    }
    Some(acc)
}

fn log(z: &Cx) -> Cx {
    let prec = z.prec();
    Cx { re: z.abs().ln(), im: Float::with_val(prec, z.im.atan2_ref(&z.re)) }
}

use rug::ops::Pow;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn li2_at_i_is_catalan_imag() {
        let p = 200;
        let v = polylog(2, &Cx::i(p)).unwrap();
        let g = Float::with_val(p, rug::float::Constant::Catalan);
        assert!((v.im - g).abs() < 1e-55);
        // Re Li_2(i) = -pi^2/48
        let pi = Float::with_val(p, rug::float::Constant::Pi);
        let r = Float::with_val(p, pi.square_ref()) / 48u32;
        assert!((v.re + r).abs() < 1e-55);
    }

    #[test]
    fn small_argument_matches_log_expansion_branch() {
        let p = 200;
        let z = Cx::from_f64(p, 0.3, 0.35);
        let a = polylog(3, &z).unwrap();
        let mut acc = Cx::zero(p);
        let mut zn = z.clone();
        for n in 1..400u32 {
            acc.add_assign(&zn.scale(&(Float::with_val(p, n).pow(3u32)).recip()));
            zn.mul_assign(&z);
        }
        assert!(a.sub(&acc).abs_f64() < 1e-50);
        // z with |z| = 0.6 exercises the mu expansion; compare with direct sum
        let z = Cx::from_f64(p, 0.36, 0.48);
        let b = polylog(3, &z).unwrap();
        let mut acc = Cx::zero(p);
        let mut zn = z.clone();
        for n in 1..400u32 {
            acc.add_assign(&zn.scale(&(Float::with_val(p, n).pow(3u32)).recip()));
            zn.mul_assign(&z);
        }
        assert!(b.sub(&acc).abs_f64() < 1e-50);
    }
}
