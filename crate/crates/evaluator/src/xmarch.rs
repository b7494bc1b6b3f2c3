//! Iterated integrals of `u`-alphabet words over `[a, 1]` by power-series
//! stepping of the triangular system `Y_j' = f_j · Y_{j−1}`, `Y_0 = 1`.

use apery_numerics::{bits_for_digits, Cx, Float, GaussianRational, HPComplex};
use apery_words::{Letter, Word, WordSum, XLetter, XSymbol};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarchError {
    #[error("integral diverges at the endpoint {0}")]
    Divergent(&'static str),
    #[error("lower limit must lie in [0, 1)")]
    BadInterval,
    #[error("series did not converge within {0} terms")]
    Budget(usize),
}

/// `κ / (ζ − u)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub kappa: GaussianRational,
    pub zeta: GaussianRational,
    pub order: u8,
}

/// Letters whose density is a finite sum of [`PoleTerm`]s.
pub trait PoleLetter: Letter {
    fn poles(&self) -> Vec<PoleTerm>;
}

impl PoleLetter for XLetter {
    fn poles(&self) -> Vec<PoleTerm> {
        let (kappa, zeta, order) = match *self {
            XLetter::A => (GaussianRational::from(-1), GaussianRational::zero(), 1),
            XLetter::X(r) => (GaussianRational::one(), r.value(), 1),
            XLetter::Q(r) => (GaussianRational::one(), r.value(), 2),
        };
        vec![PoleTerm { kappa, zeta, order }]
    }
}

impl PoleLetter for XSymbol {
    fn poles(&self) -> Vec<PoleTerm> {
        let mut out: Vec<PoleTerm> = Vec::new();
        for (c, l) in self.expansion() {
            for p in l.poles() {
                let k = &c * &p.kappa;
                match out.iter_mut().find(|q| q.zeta == p.zeta && q.order == p.order) {
                    Some(q) => q.kappa += &k,
                    None => out.push(PoleTerm { kappa: k, ..p }),
                }
            }
        }
        out.retain(|p| !p.kappa.is_zero());
        out
    }
}

/// A word sum integrated over `[lower, 1]` to `digits` digits.
#[derive(Clone, Debug)]
pub struct MarchProblem<L: Letter> {
    pub words: WordSum<L>,
    pub lower: Float,
    pub digits: u32,
}

/// Evaluates `Σ c_w ∫_lower^1 w`.
pub fn ode_march<L: PoleLetter>(p: &MarchProblem<L>) -> Result<HPComplex, MarchError> {
    let prec = bits_for_digits(p.digits);
    let mut acc = Cx::zero(prec);
    let mut err = 0.0;
    for (w, c) in p.words.iter() {
        let v = march_word(w, &p.lower, p.digits)?;
        acc.add_assign(&c.to_cx(prec).mul(&v.value));
        err += v.err * c.to_cx(53).abs_f64().max(1.0);
    }
    Ok(HPComplex::new(acc, err))
}

/// `∫_lower^1 α1 … αm` with `α1` at the upper limit.
pub fn march_word<L: PoleLetter>(w: &Word<L>, lower: &Float, digits: u32) -> Result<HPComplex, MarchError> {
    let prec = bits_for_digits(digits);
    if *lower < 0 || *lower >= 1 {
        return Err(MarchError::BadInterval);
    }
    let m = w.len();
    if m == 0 {
        return Ok(HPComplex::exact(Cx::one(prec)));
    }
    let eps = 10f64.powi(-(digits as i32) - 6);
    let poles: Vec<Vec<PoleTerm>> = w.letters().iter().map(|l| l.poles()).collect();
    let half = Float::with_val(prec, 0.5);
    let join = if *lower > half { Float::with_val(prec, lower) } else { half };

    // suffix values ∫_lower^join α_{m+1−j} … α_m, j = 0..m
    let inner: Vec<Vec<PoleTerm>> = poles.iter().rev().cloned().collect();
    let mut tail_err = 0.0;
    let mut suf = vec![Cx::zero(prec); m];
    if lower.is_zero() {
        let (v, e) = series_step(&inner, &Float::new(prec), &join, &suf, eps, "0")?;
        suf = v;
        tail_err += e;
    } else {
        let mut c = Float::with_val(prec, lower);
        while c < join {
            let dist = Float::with_val(prec, 1u32 - &c).min(&c);
            let mut h = dist / 2u32;
            let rest = Float::with_val(prec, &join - &c);
            let last = h >= rest;
            if last {
                h = rest;
            }
            let (v, e) = series_step(&inner, &c, &h, &suf, eps, "lower")?;
            suf = v;
            tail_err += e;
            c = if last { join.clone() } else { c + h };
        }
    }

    // prefix values ∫_join^1 α1 … αj in v = 1 − u
    let outer: Vec<Vec<PoleTerm>> = poles
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|p| PoleTerm {
                    kappa: if p.order % 2 == 1 { -&p.kappa } else { p.kappa.clone() },
                    zeta: &GaussianRational::one() - &p.zeta,
                    order: p.order,
                })
                .collect()
        })
        .collect();
    let hv = Float::with_val(prec, 1u32 - &join);
    let (pre, e) = series_step(&outer, &Float::new(prec), &hv, &vec![Cx::zero(prec); m], eps, "1")?;
    tail_err += e;

    // Σ_j ∫_join^1 α1…αj · ∫_lower^join α_{j+1}…αm
    let mut total = suf[m - 1].clone();
    for j in 1..m {
        total.add_assign(&pre[j - 1].mul(&suf[m - 1 - j]));
    }
    total.add_assign(&pre[m - 1]);
    let scale = total.abs_f64().max(1.0);
    let round = scale * 2f64.powi(-(prec as i32 - 16));
    Ok(HPComplex::new(total, tail_err * scale + round))
}

struct PoleState {
    kappa: Cx,
    beta: Cx,
    order: u8,
    at_center: bool,
    s1: Cx,
    s2: Cx,
}

/// One power-series step of `Y_j' = f_j Y_{j−1}` from `center` over length `h`
/// in the scaled variable `s = (u − center)/h`, starting from `y0 = (Y_1..Y_m)`.
fn series_step(
    letters: &[Vec<PoleTerm>],
    center: &Float,
    h: &Float,
    y0: &[Cx],
    eps: f64,
    at: &'static str,
) -> Result<(Vec<Cx>, f64), MarchError> {
    let prec = center.prec();
    let m = letters.len();
    let mut states: Vec<Vec<PoleState>> = Vec::with_capacity(m);
    for ps in letters {
        let mut st = Vec::new();
        for p in ps {
            let zeta = p.zeta.to_cx(prec);
            let at_center = center.is_zero() && p.zeta.is_zero();
            let kappa = p.kappa.to_cx(prec);
            let (kappa, beta) = if at_center {
                (kappa, Cx::zero(prec))
            } else {
                let d = zeta.sub(&Cx::from_real(center.clone()));
                let beta = Cx::from_real(h.clone()).div(&d);
                // h · κ/(d − h s)^e = κ h^{1−e} β^e / (1 − β s)^e
                let k = if p.order == 2 { kappa.scale(&Float::with_val(prec, h.recip_ref())) } else { kappa };
                (k, beta)
            };
            st.push(PoleState { kappa, beta, order: p.order, at_center, s1: Cx::zero(prec), s2: Cx::zero(prec) });
        }
        states.push(st);
    }
    for (j, st) in states.iter().enumerate() {
        let g0_nonzero = if j == 0 { true } else { !y0[j - 1].is_zero() };
        if g0_nonzero && st.iter().any(|s| s.at_center) {
            return Err(MarchError::Divergent(at));
        }
    }
    // cur[j] = coefficient n of Y_j (j = 0 is the constant 1)
    let mut cur: Vec<Cx> = std::iter::once(Cx::one(prec)).chain(y0.iter().cloned()).collect();
    let mut sums: Vec<Cx> = y0.to_vec();
    let scale = y0.iter().map(Cx::abs_f64).fold(1.0, f64::max);
    let max_terms = 40 + (-eps.log2() * 4.0) as usize;
    let mut small_run = 0;
    let mut last_mag = 0.0;
    for n in 0..max_terms {
        let mut next = vec![Cx::zero(prec); m + 1];
        for j in 1..=m {
            let g_n = &cur[j - 1];
            let g_next = &next[j - 1];
            let mut p = Cx::zero(prec);
            for s in states[j - 1].iter_mut() {
                if s.at_center {
                    p.sub_assign(&s.kappa.mul(g_next));
                    continue;
                }
                s.s1 = s.beta.mul(&g_n.add(&s.s1));
                if s.order == 1 {
                    p.add_assign(&s.kappa.mul(&s.s1));
                } else {
                    s.s2 = s.beta.mul(&s.s1.add(&s.s2));
                    p.add_assign(&s.kappa.mul(&s.s2));
                }
            }
            next[j] = p.div_u(n as u32 + 1);
        }
        let mag = next[1..].iter().map(Cx::abs_f64).fold(0.0, f64::max);
        for j in 1..=m {
            sums[j - 1].add_assign(&next[j]);
        }
        cur = next;
        if mag <= eps * scale {
            small_run += 1;
            if small_run >= 4 && n >= 8 {
                return Ok((sums, 4.0 * mag.max(last_mag) / scale));
            }
        } else {
            small_run = 0;
        }
        last_mag = mag;
    }
    Err(MarchError::Budget(max_terms))
}
