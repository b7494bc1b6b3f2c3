//! Multiple polylogarithms `Li_{s}(z) = Σ_{n1 > … > nd ≥ 1} Π z_j^{n_j} / n_j^{s_j}`
//! at fourth roots of unity by nested partial sums and tail extrapolation.

use apery_numerics::{accelerate, bits_for_digits, Cx, Float, HPComplex, HPReal, TailModel};
use apery_words::{LiIndex, Root4};
use rug::Assign;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MplError {
    #[error("Li with (s1, z1) = (1, 1) diverges")]
    NotAdmissible,
    #[error("s1 = 1 has no truncation bound; use the conditional mode or the ODE march")]
    Deferred,
    #[error("index lists have different lengths")]
    Shape,
    #[error("{0}")]
    Accel(#[from] apery_numerics::AccelError),
}

/// `acc += r · v` for a fourth root of unity `r`.
fn add_rotated(acc: &mut Cx, v: &Cx, r: Root4) {
    match r {
        Root4::One => {
            acc.re += &v.re;
            acc.im += &v.im;
        }
        Root4::I => {
            acc.re -= &v.im;
            acc.im += &v.re;
        }
        Root4::MinusOne => {
            acc.re -= &v.re;
            acc.im -= &v.im;
        }
        Root4::MinusI => {
            acc.re += &v.im;
            acc.im -= &v.re;
        }
    }
}

/// Partial sums `Σ_{n1 ≤ N}` at every checkpoint `N` (ascending).
pub fn mpl_partial_sums(s: &[u32], z: &[Root4], prec: u32, checkpoints: &[u64]) -> Vec<Cx> {
    let d = s.len();
    let smax = *s.iter().max().unwrap_or(&1) as usize;
    // prefix[j] = Σ_{n_j < n} of the nested sum over levels j.., prefix[d] = 1
    let mut prefix = vec![Cx::zero(prec); d + 1];
    prefix[d] = Cx::one(prec);
    let mut phase = vec![Root4::One; d];
    let mut inv_pow = vec![Float::new(prec); smax + 1];
    let mut tmp = Cx::zero(prec);
    let mut out = Vec::with_capacity(checkpoints.len());
    let last = *checkpoints.last().unwrap_or(&0);
    let mut ci = 0;
    for n in 1..=last {
        inv_pow[1] = Float::with_val(prec, n);
        inv_pow[1].recip_mut();
        for e in 2..=smax {
            let (lo, hi) = inv_pow.split_at_mut(e);
            hi[0].assign(&lo[e - 1] * &lo[1]);
        }
        // ascending j reads prefix[j + 1] before it absorbs index n
        for j in 0..d {
            phase[j] = phase[j].mul(z[j]);
            let w = &inv_pow[s[j] as usize];
            tmp.re.assign(&prefix[j + 1].re * w);
            tmp.im.assign(&prefix[j + 1].im * w);
            add_rotated(&mut prefix[j], &tmp, phase[j]);
        }
        while ci < checkpoints.len() && checkpoints[ci] == n {
            out.push(prefix[0].clone());
            ci += 1;
        }
    }
    out
}

/// `Li_s(z)` for `s1 ≥ 2`.
pub fn mpl_sum(s: &[u32], z: &[Root4], digits: u32) -> Result<HPComplex, MplError> {
    check(s, z)?;
    if s[0] == 1 {
        return Err(MplError::Deferred);
    }
    extrapolated(s, z, digits)
}

/// `Li_s(z)` also for `s1 = 1, z1 ≠ 1`, where the outer sum converges only
/// conditionally; partial sums are taken at `N ≡ 0 (mod 4)` to freeze the phase.
pub fn mpl_sum_conditional(s: &[u32], z: &[Root4], digits: u32) -> Result<HPComplex, MplError> {
    check(s, z)?;
    extrapolated(s, z, digits)
}

/// [`mpl_sum_conditional`] for a parsed index.
pub fn mpl_index(li: &LiIndex, digits: u32) -> Result<HPComplex, MplError> {
    mpl_sum_conditional(&li.s, &li.z, digits)
}

fn check(s: &[u32], z: &[Root4]) -> Result<(), MplError> {
    if s.len() != z.len() || s.is_empty() {
        return Err(MplError::Shape);
    }
    if s[0] == 1 && z[0] == Root4::One {
        return Err(MplError::NotAdmissible);
    }
    Ok(())
}

fn extrapolated(s: &[u32], z: &[Root4], digits: u32) -> Result<HPComplex, MplError> {
    let prec = bits_for_digits(digits);
    let d = s.len();
    let top = if d >= 3 { 17 } else { 16 };
    let ns: Vec<u64> = (5..=top).map(|e| 1u64 << e).collect();
    let sums = mpl_partial_sums(s, z, prec, &ns);
    let first = if z[0] == Root4::One { s[0] as f64 - 1.0 } else { s[0] as f64 };
    // only inner sums of 1/n at z = 1 grow logarithmically
    let logs = s[1..].iter().zip(&z[1..]).filter(|&(&e, &r)| e == 1 && r == Root4::One).count() as u32;
    let model = TailModel { first, step: 1.0, log_powers: logs };
    let re: Vec<HPReal> = sums.iter().map(|c| HPReal::exact(c.re.clone())).collect();
    let im: Vec<HPReal> = sums.iter().map(|c| HPReal::exact(c.im.clone())).collect();
    let r = accelerate(&ns, &re, &model)?;
    let i = accelerate(&ns, &im, &model)?;
    let err = r.value.err.hypot(i.value.err);
    Ok(HPComplex::new(Cx { re: r.value.value, im: i.value.value }, err))
}
