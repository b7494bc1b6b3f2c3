use apery_evaluator::*;
use apery_numerics::{bits_for_digits, Float, GaussianRational, Rational};
use apery_series::{oracle_eval, parse_spec, SeriesSpec};
use rug::float::Constant;

fn spec(s: &str) -> SeriesSpec {
    parse_spec(s).unwrap()
}

fn value(s: &SeriesSpec) -> f64 {
    let e = evaluate_series(s, 40).unwrap();
    assert!(e.value.value.im.clone().abs() < 1e-30);
    e.value.value.re.to_f64()
}

#[test]
fn unit_point_values() {
    let cases = [
        ("o+:3 >= 0", 1.122690025, 1e-8),
        ("o-:2 > 0", 2.954621213, 1e-8),
        ("o-:3 > 0", 2.1543060048, 1e-8),
        ("o-:2 > o+:1 >= 0", 3.937040753, 1e-8),
        ("o+:2 >= o-:1 > 0", 1.630404535576, 1e-10),
        ("e:2 > o+:1 >= o-:2 > 0", 0.98658158829, 1e-8),
        ("e:2 > o-:1 > 0", 1.5053689423, 1e-8),
    ];
    for (s, want, tol) in cases {
        let v = value(&spec(s));
        assert!((v - want).abs() < tol, "{s}: {v} vs {want}");
    }
}

#[test]
fn closed_forms_at_the_unit_point() {
    let p = bits_for_digits(40);
    let g = Float::with_val(p, Constant::Catalan);
    let z3 = Float::with_val(p, 3u32).zeta();
    let e = evaluate_series(&spec("o+:2 >= 0"), 40).unwrap();
    assert!((e.value.value.re.clone() - Float::with_val(p, &g * 2u32)).abs() < 1e-35);
    let e = evaluate_series(&spec("n:2 > o+:1 >= 0"), 40).unwrap();
    assert!((e.value.value.re.clone() - Float::with_val(p, &z3 * 7u32)).abs() < 1e-35);
    // π²/8 − 2G + 7ζ(3)/4, through a divergent bundle
    let e = evaluate_series(&spec("e:2 > o-:1 > 0"), 40).unwrap();
    assert!(e.limit.is_some());
    let pi2 = Float::with_val(p, Constant::Pi).square() / 8u32;
    let want = pi2 - Float::with_val(p, &g * 2u32) + Float::with_val(p, &z3 * 7u32) / 4u32;
    assert!((e.value.value.re.clone() - want).abs() < 1e-20);
}

#[test]
fn example_s_and_its_parts() {
    let p = bits_for_digits(40);
    let g = Float::with_val(p, Constant::Catalan);
    let z3 = Float::with_val(p, 3u32).zeta();
    let s1 = evaluate_series(&spec("n:2 > o+:1 >= o-:1 > 0"), 40).unwrap();
    let want = Float::with_val(p, g.square_ref()) * 8u32;
    assert!((s1.value.value.re.clone() - want).abs() < 1e-30);
    let parts = vec![
        (GaussianRational::from(1), spec("n:2 >= o-:1 > 0")),
        (GaussianRational::from(-2), spec("n:1 >= o-:1 > 0")),
        (GaussianRational::from(4), spec("o+:1 >= o-:1 > 0")),
    ];
    let s2 = bundle_limit(&parts, &EvalOptions::default()).unwrap();
    let want = Float::with_val(p, &z3 * 7u32) - Float::with_val(p, &g * 8u32);
    assert!((s2.value.value.re.clone() - want).abs() < 1e-15);
    let s = evaluate_series(&spec("n:2 >= o+:1 >= o-:1 > 0"), 40).unwrap();
    assert!((s.value.value.re.to_f64() - 7.79861732643).abs() < 1e-10);
}

#[test]
fn squared_binomial_values() {
    for (s, want) in [("o+:4 >= e:1 > 0", 0.04433915814), ("e:3 > o-:1 > 0", 0.40829155182), ("o-:3 > e:1 > 0", 0.38530528471)] {
        let v = value(&spec(s).with_binom_power(2));
        assert!((v - want).abs() < 1e-10, "{s}: {v}");
    }
}

#[test]
fn algebraic_points() {
    let p = bits_for_digits(40);
    let pi3 = Float::with_val(p, Constant::Pi).square() * Float::with_val(p, Constant::Pi);
    let s3 = Float::with_val(p, 3u32).sqrt();
    let s = spec("o+:1 >= e:2 > 0");
    let cases = [
        ((1, 4), Float::with_val(p, &pi3 / 324u32) / &s3),
        ((3, 4), Float::with_val(p, &pi3 * 2u32) / 81u32 / &s3),
        ((1, 2), Float::with_val(p, &pi3 / 192u32)),
    ];
    for ((a, b), want) in cases {
        let x2 = Rational::from((a, b));
        let e = evaluate_series(&s.clone().with_x2(x2.clone()), 40).unwrap();
        assert!((e.value.value.re.clone() - &want).abs() < 1e-35, "x2 = {x2}");
        let o = oracle_eval(&s.clone().with_x2(x2), 40).unwrap();
        assert!((o.value.re - &want).abs() < 1e-30);
    }
    let v = value(&spec("o+:2 >= 0").with_x2(Rational::from((1, 4))));
    assert!((v - 1.063459833).abs() < 1e-8);
}

#[test]
fn pipeline_matches_oracle_off_the_unit_point() {
    let corpus = [
        "o+:2 >= 0",
        "o+:3 >= 0",
        "e:2 > o+:1 >= 0",
        "o-:2 > 0",
        "o-:3 > 0",
        "o-:2 > o+:1 >= 0",
        "o+:2 >= o-:1 > 0",
        "e:2 > o+:1 >= o-:2 > 0",
        "e:2 > o-:1 > 0",
        "n:2 >= o+:1 >= o-:1 > 0",
        "e:1 > 0",
        "o+:1 >= e:2 > 0",
    ];
    for s in corpus {
        for x2 in [Rational::from((1, 4)), Rational::from((9, 16))] {
            let sp = spec(s).with_x2(x2.clone());
            let a = evaluate_series(&sp, 40).unwrap();
            let b = oracle_eval(&sp, 40).unwrap();
            let d = a.value.abs_diff(&b.value);
            assert!(d < 1e-12, "{s} at {x2}: diff {d:e}");
        }
    }
}

#[test]
fn refusals() {
    assert!(matches!(evaluate_series(&spec("e:1 > 0"), 30), Err(EvalError::Invalid(_))));
    let neg = spec("o+:2 >= 0").with_x2(Rational::from((-1, 4)));
    assert!(matches!(evaluate_series(&neg, 30), Err(EvalError::OutOfRange(_))));
    let sq = spec("o+:2 >= 0").with_binom_power(2).with_x2(Rational::from((1, 4)));
    assert!(evaluate_series(&sq, 30).is_err());
}

#[test]
fn sums_engine_agrees_at_the_unit_point() {
    for s in ["o+:2 >= 0", "o-:2 > 0", "n:2 > o+:1 >= 0"] {
        let opts = EvalOptions { digits: 30, engine: Engine::Both, ladder: None };
        let e = evaluate_series_with(&spec(s), &opts).unwrap();
        assert_eq!(e.engine, Engine::Both, "{s}");
    }
}
