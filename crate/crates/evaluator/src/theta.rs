//! Iterated integrals of ω-words over `[0, x]` in the coordinate `t = sin θ`,
//! where every letter becomes a ratio of `sin θ`, `cos θ` and `1`.

use crate::xmarch::MarchError;
use apery_numerics::{bits_for_digits, Cx, Float, HPComplex, HPReal};
use apery_words::{OmegaLetter, Word, WordSum};
use rug::float::Constant;

#[derive(Clone, Copy)]
enum Trig {
    One,
    S,
    C,
    SC,
}

fn fraction(l: OmegaLetter) -> (Trig, Trig) {
    match l {
        OmegaLetter::W0 => (Trig::C, Trig::S),
        OmegaLetter::W1 => (Trig::One, Trig::One),
        OmegaLetter::W2 => (Trig::S, Trig::C),
        OmegaLetter::W3 => (Trig::One, Trig::S),
        OmegaLetter::W5 => (Trig::S, Trig::One),
        OmegaLetter::W8 => (Trig::One, Trig::C),
        OmegaLetter::W20 => (Trig::One, Trig::SC),
        OmegaLetter::Wdt => (Trig::C, Trig::One),
    }
}

enum Center {
    Zero,
    /// `θ = π/2 − v`, stepping in `v`.
    HalfPiBack,
    At(Float),
}

/// Scaled Laurent series `h·f(center ± h s) = r_{−1}/s + Σ r_n s^n`.
struct Laurent {
    pole: Float,
    coeffs: Vec<Float>,
}

fn mul(a: &[Float], b: &[Float], k: usize) -> Vec<Float> {
    let prec = a[0].prec();
    (0..k)
        .map(|n| {
            let mut acc = Float::new(prec);
            for i in 0..=n {
                acc += Float::with_val(prec, &a[i] * &b[n - i]);
            }
            acc
        })
        .collect()
}

fn div(num: &[Float], den: &[Float], k: usize) -> Vec<Float> {
    let prec = num[0].prec();
    let mut q: Vec<Float> = Vec::with_capacity(k);
    for n in 0..k {
        let mut acc = num[n].clone();
        for i in 1..=n {
            acc -= Float::with_val(prec, &den[i] * &q[n - i]);
        }
        q.push(acc / &den[0]);
    }
    q
}

fn trig_series(center: &Center, h: &Float, k: usize) -> (Vec<Float>, Vec<Float>) {
    let prec = h.prec();
    let mut sin = vec![Float::new(prec); k];
    let mut cos = vec![Float::new(prec); k];
    let mut term = Float::with_val(prec, 1);
    for n in 0..k {
        let signed = if (n / 2) % 2 == 0 { term.clone() } else { -term.clone() };
        if n % 2 == 0 {
            cos[n] = signed;
        } else {
            sin[n] = signed;
        }
        term *= h;
        term /= (n + 1) as u32;
    }
    match center {
        Center::Zero => (sin, cos),
        Center::HalfPiBack => (cos, sin),
        Center::At(c) => {
            let (sc, cc) = (Float::with_val(prec, c.sin_ref()), Float::with_val(prec, c.cos_ref()));
            let s = (0..k).map(|n| Float::with_val(prec, &sc * &cos[n]) + Float::with_val(prec, &cc * &sin[n])).collect();
            let c = (0..k).map(|n| Float::with_val(prec, &cc * &cos[n]) - Float::with_val(prec, &sc * &sin[n])).collect();
            (s, c)
        }
    }
}

fn letter_series(l: OmegaLetter, s: &[Float], c: &[Float], h: &Float, k: usize) -> Laurent {
    let prec = h.prec();
    let mut one = vec![Float::new(prec); k + 2];
    one[0] = Float::with_val(prec, 1);
    let pick = |t: Trig| -> Vec<Float> {
        match t {
            Trig::One => one.clone(),
            Trig::S => s.to_vec(),
            Trig::C => c.to_vec(),
            Trig::SC => mul(s, c, k + 2),
        }
    };
    let (num, den) = fraction(l);
    let (num, mut den) = (pick(num), pick(den));
    let shifted = den[0].is_zero();
    if shifted {
        den.remove(0);
        den.push(Float::new(prec));
    }
    let q = div(&num, &den, k + 1);
    let scaled: Vec<Float> = q.into_iter().map(|v| v * h).collect();
    if shifted {
        Laurent { pole: scaled[0].clone(), coeffs: scaled[1..].to_vec() }
    } else {
        Laurent { pole: Float::new(prec), coeffs: scaled[..k].to_vec() }
    }
}

/// One step of `Y_j' = f_j Y_{j−1}` with all `k` series terms.
fn step(letters: &[OmegaLetter], center: &Center, h: &Float, y0: &[Float], k: usize, at: &'static str) -> Result<(Vec<Float>, f64), MarchError> {
    let prec = h.prec();
    let m = letters.len();
    let (s, c) = trig_series(center, h, k + 2);
    let fs: Vec<Laurent> = letters.iter().map(|&l| letter_series(l, &s, &c, h, k)).collect();
    let mut a: Vec<Vec<Float>> = Vec::with_capacity(m + 1);
    let mut one = vec![Float::new(prec); k + 1];
    one[0] = Float::with_val(prec, 1);
    a.push(one);
    for j in 1..=m {
        let f = &fs[j - 1];
        let g = &a[j - 1];
        if !f.pole.is_zero() && !g[0].is_zero() {
            return Err(MarchError::Divergent(at));
        }
        let mut y = vec![Float::new(prec); k + 1];
        y[0] = y0[j - 1].clone();
        for n in 0..k {
            let mut p = Float::with_val(prec, &f.pole * &g[n + 1]);
            for i in 0..=n {
                p += Float::with_val(prec, &f.coeffs[i] * &g[n - i]);
            }
            y[n + 1] = p / (n + 1) as u32;
        }
        a.push(y);
    }
    let mut out = Vec::with_capacity(m);
    let mut tail: f64 = 0.0;
    for y in &a[1..] {
        let mut acc = Float::new(prec);
        for v in y {
            acc += v;
        }
        tail = tail.max(y[k - 3..].iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max));
        out.push(acc);
    }
    Ok((out, 4.0 * tail))
}

/// `∫_0^x α1 … αm` for `0 < x ≤ 1`.
pub fn omega_march(w: &Word<OmegaLetter>, x: &Float, digits: u32) -> Result<HPReal, MarchError> {
    let prec = bits_for_digits(digits);
    if *x <= 0 || *x > 1 {
        return Err(MarchError::BadInterval);
    }
    let m = w.len();
    if m == 0 {
        return Ok(HPReal::exact(Float::with_val(prec, 1)));
    }
    let k = ((digits + 8) as f64 * 3.33) as usize + 40;
    let quarter = Float::with_val(prec, Constant::Pi) / 4u32;
    let half = Float::with_val(prec, &quarter * 2u32);
    let theta = Float::with_val(prec, x.asin_ref());
    let inner: Vec<OmegaLetter> = w.letters().iter().rev().copied().collect();
    let unit = *x == 1;
    let h0 = if unit { quarter.clone() } else { Float::with_val(prec, &quarter).min(&theta) };
    let (mut suf, mut err) = step(&inner, &Center::Zero, &h0, &vec![Float::new(prec); m], k, "0")?;
    if unit {
        let (pre, e) = step(w.letters(), &Center::HalfPiBack, &quarter, &vec![Float::new(prec); m], k, "1")?;
        err += e;
        let mut total = suf[m - 1].clone();
        for j in 1..m {
            total += Float::with_val(prec, &pre[j - 1] * &suf[m - 1 - j]);
        }
        total += &pre[m - 1];
        let scale = total.to_f64().abs().max(1.0);
        return Ok(HPReal::new(total, err * scale + scale * 2f64.powi(16 - prec as i32)));
    }
    let mut c = h0;
    while c < theta {
        let dist = Float::with_val(prec, &half - &c).min(&c);
        let mut h = dist / 2u32;
        let rest = Float::with_val(prec, &theta - &c);
        let last = h >= rest;
        if last {
            h = rest;
        }
        let (v, e) = step(&inner, &Center::At(c.clone()), &h, &suf, k, "x")?;
        suf = v;
        err += e;
        c = if last { theta.clone() } else { c + h };
    }
    let total = suf[m - 1].clone();
    let scale = total.to_f64().abs().max(1.0);
    Ok(HPReal::new(total, err * scale + scale * 2f64.powi(16 - prec as i32)))
}

/// `Σ c_w ∫_0^x w` for a word sum with Gaussian rational coefficients.
pub fn omega_march_sum(ws: &WordSum<OmegaLetter>, x: &Float, digits: u32) -> Result<HPComplex, MarchError> {
    let prec = bits_for_digits(digits);
    let mut acc = Cx::zero(prec);
    let mut err = 0.0;
    for (w, c) in ws.iter() {
        let v = omega_march(w, x, digits)?;
        acc.add_assign(&c.to_cx(prec).scale(&v.value));
        err += v.err * c.to_cx(53).abs_f64().max(1.0);
    }
    Ok(HPComplex::new(acc, err))
}
