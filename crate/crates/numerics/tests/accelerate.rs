use apery_numerics::{accelerate, bits_for_digits, Float, HPReal, TailModel};
use proptest::prelude::*;
use rug::float::Constant;

fn partial_sums(ns: &[u64], prec: u32, term: impl Fn(u64) -> Float) -> Vec<HPReal> {
    let mut out = Vec::new();
    let mut acc = Float::new(prec);
    let mut k = 0;
    for &n in ns {
        while k < n {
            acc += term(k);
            k += 1;
        }
        out.push(HPReal::exact(acc.clone()));
    }
    out
}

#[test]
fn catalan_from_alternating_partial_sums() {
    let prec = bits_for_digits(40);
    let ns: Vec<u64> = (6..=12).map(|e| 1u64 << e).collect();
    let sums = partial_sums(&ns, prec, |k| {
        let d = Float::with_val(prec, 2 * k + 1);
        let t = Float::with_val(prec, 1) / d.square();
        if k % 2 == 0 {
            t
        } else {
            -t
        }
    });
    let r = accelerate(&ns, &sums, &TailModel::power_law(2.0, 1.0)).unwrap();
    let g = Float::with_val(prec, Constant::Catalan);
    // independent check: alternating series with the tail bounded by the first omitted term
    let mut direct = Float::new(prec);
    let n_direct = 200_000u64;
    for k in 0..n_direct {
        let t = Float::with_val(prec, 1) / Float::with_val(prec, 2 * k + 1).square();
        if k % 2 == 0 {
            direct += t;
        } else {
            direct -= t;
        }
    }
    let bound = 1.0 / ((2 * n_direct + 1) as f64).powi(2);
    assert!(r.value.abs_diff(&direct) < bound + 1e-12);
    assert!(r.value.abs_diff(&g) < 1e-12, "{:?}", r.value);
}

#[test]
fn zeta3_from_partial_sums() {
    let prec = bits_for_digits(30);
    let ns: Vec<u64> = (0..7).map(|k| 1000u64 << k).collect();
    let sums = partial_sums(&ns, prec, |k| {
        let n = Float::with_val(prec, k + 1);
        Float::with_val(prec, 1) / (n.clone() * &n * &n)
    });
    let r = accelerate(&ns, &sums, &TailModel::power_law(2.0, 1.0)).unwrap();
    let z3 = Float::with_val(prec, 3u32).zeta();
    assert!(r.value.abs_diff(&z3) < 1e-10, "{:?}", r.value);
}

#[test]
fn constant_sequence_is_fixed_point() {
    let prec = 128;
    let c = Float::with_val(prec, 7) / 3u32;
    let ns: Vec<u64> = (0..6).map(|k| 10u64 << k).collect();
    let sums = vec![HPReal::exact(c.clone()); 6];
    let r = accelerate(&ns, &sums, &TailModel::half_integer(1)).unwrap();
    assert_eq!(r.value.value, c);
}

#[test]
fn too_few_points_rejected() {
    let prec = 64;
    let sums = vec![HPReal::exact(Float::with_val(prec, 1)); 3];
    assert!(accelerate(&[1, 2, 4], &sums, &TailModel::power_law(1.0, 1.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn geometric_limit_within_reported_error(num in 1u32..9, den in 10u32..20) {
        let prec = 160;
        let r = Float::with_val(prec, num) / den;
        let ns: Vec<u64> = (0..8).map(|k| 8u64 << k).collect();
        let sums = partial_sums(&ns, prec, |k| r.clone().pow(k as u32) * Float::with_val(prec, 1));
        let limit = Float::with_val(prec, 1) / (Float::with_val(prec, 1) - &r);
        let out = accelerate(&ns, &sums, &TailModel::power_law(1.0, 1.0)).unwrap();
        let diff = out.value.abs_diff(&limit);
        prop_assert!(diff <= 10.0 * out.value.err.max(1e-40), "diff {diff} err {}", out.value.err);
    }
}

use rug::ops::Pow;
