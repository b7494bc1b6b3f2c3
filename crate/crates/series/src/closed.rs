use crate::polylog::polylog;
use crate::spec::{Factor, Form, Junction, SeriesSpec};
use apery_numerics::{accelerate, bits_for_digits, Cx, Float, HPComplex, HPReal, TailModel};
use rug::float::Constant;
use rug::ops::Pow;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TStarVariant {
    /// all exponents 1
    Ones,
    /// all exponents 2
    Twos,
}

#[derive(Debug, Error)]
pub enum ClosedFormError {
    #[error("angle outside the domain of the closed form")]
    Domain,
    #[error("composition must be non-empty with s1 >= 2")]
    BadComposition,
    #[error("{0}")]
    Accel(#[from] apery_numerics::AccelError),
}

/// `τ*(1_d; sin y) = 2 csc 2y · Im Li_d(i tan y)` and
/// `τ*(2_d; sin y) = 2 csc y · Im Li_{2d}(i tan(y/2))`.
///
/// `τ*(s; x) = Σ_{n1 ≥ … ≥ nd ≥ 0} b_{n1}(x) / Π (2n_j+1)^{s_j}`.
pub fn closed_form_tstar(variant: TStarVariant, d: u32, y: &Float) -> Result<HPComplex, ClosedFormError> {
    let prec = y.prec();
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    if d == 0 || *y <= 0 {
        return Err(ClosedFormError::Domain);
    }
    let (weight, arg, scale) = match variant {
        TStarVariant::Ones => {
            if *y >= half_pi {
                return Err(ClosedFormError::Domain);
            }
            let y2 = Float::with_val(prec, y * 2u32);
            (d, Float::with_val(prec, y.tan_ref()), y2.sin().recip() * 2u32)
        }
        TStarVariant::Twos => {
            if *y > half_pi {
                return Err(ClosedFormError::Domain);
            }
            let yh = Float::with_val(prec, y / 2u32);
            (2 * d, yh.tan(), Float::with_val(prec, y.sin_ref()).recip() * 2u32)
        }
    };
    let z = Cx { re: Float::new(prec), im: arg };
    let li = polylog(weight, &z).ok_or(ClosedFormError::Domain)?;
    let v = li.im * scale;
    let err = v.to_f64().abs() * 2f64.powi(-(prec as i32) + 8);
    Ok(HPReal::new(v, err).into_complex())
}

/// The τ* chain as a spec: `o+:s >= o+:s >= … >= 0` at `x2 = sin² y`.
pub fn tstar_spec(variant: TStarVariant, d: u32) -> SeriesSpec {
    let s = match variant {
        TStarVariant::Ones => 1,
        TStarVariant::Twos => 2,
    };
    SeriesSpec::new(vec![Factor { form: Form::OPlus, exp: s }; d as usize], vec![Junction::Weak; d as usize])
}

/// Multiple t-star value `Σ_{n1 ≥ … ≥ nd ≥ 0} Π (2n_j+1)^{-s_j}` by direct
/// summation and tail extrapolation.
pub fn t_star_direct(s: &[u32], target_digits: u32) -> Result<HPReal, ClosedFormError> {
    if s.is_empty() || s[0] < 2 || s.contains(&0) {
        return Err(ClosedFormError::BadComposition);
    }
    let prec = bits_for_digits(target_digits);
    let d = s.len();
    let ns: Vec<u64> = (6..=16).map(|e| 1u64 << e).collect();
    // prefix[j] = Σ over n_j ≤ m of the inner nested value at level j
    let mut prefix = vec![Float::new(prec); d + 1];
    let mut out = Vec::new();
    let mut ci = 0;
    let last = *ns.last().unwrap();
    for m in 0..=last {
        let mut inner = Float::with_val(prec, 1);
        for j in (0..d).rev() {
            let den = Float::with_val(prec, 2 * m + 1).pow(s[j]);
            // weak junctions: include the diagonal m itself
            let v = Float::with_val(prec, &inner / &den);
            prefix[j] += &v;
            inner = prefix[j].clone();
        }
        if ns.get(ci) == Some(&m) {
            out.push(HPReal::exact(prefix[0].clone()));
            ci += 1;
        }
    }
    let logs = s[1..].iter().filter(|&&e| e == 1).count().min(2) as u32;
    let model = TailModel { first: s[0] as f64 - 1.0, step: 1.0, log_powers: logs };
    Ok(accelerate(&ns, &out, &model)?.value)
}
