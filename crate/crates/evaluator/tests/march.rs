use apery_compiler::compile;
use apery_cov::{lambda, to_x_alphabet};
use apery_evaluator::*;
use apery_numerics::{bits_for_digits, Float, GaussianRational};
use apery_series::parse_spec;
use apery_words::{WordSum, XSymbolWord};
use rug::float::Constant;
use rug::ops::Pow;

fn prec() -> u32 {
    bits_for_digits(40)
}

#[test]
fn arcsine_square() {
    // (i d)(i d) over [0,1] is the image of ∫ω1ω1 = (π/2)²/2
    let w: XSymbolWord = "d[-i,+i] d[-i,+i]".parse().unwrap();
    let p = MarchProblem { words: WordSum::term(GaussianRational::from(-1), w), lower: Float::new(prec()), digits: 40 };
    let v = ode_march(&p).unwrap();
    let want = Float::with_val(prec(), Constant::Pi).square() / 8u32;
    assert!((v.value.re.clone() - &want).abs() < 1e-38, "{:?}", v.value);
    assert!(v.value.im.clone().abs() < 1e-38);
    assert!(v.err < 1e-35);
}

#[test]
fn catalan_word() {
    let pi = compile(&parse_spec("o+:2 >= 0").unwrap()).unwrap();
    let mut total = WordSum::zero();
    for t in to_x_alphabet(&pi) {
        total.add_scaled(&t.scalar, &WordSum::from_word(t.word));
    }
    let v = ode_march(&MarchProblem { words: total, lower: Float::new(prec()), digits: 40 }).unwrap();
    let g = Float::with_val(prec(), Constant::Catalan) * 2u32;
    assert!((v.value.re.clone() - &g).abs() < 1e-38, "{:?}", v.value);
}

#[test]
fn off_unit_point_uses_lower_limit() {
    // Σ b_n x^{2n+1}... at x² = 1/4 prefactor f3 = 2 times ∫ over [λ,1]
    let pi = compile(&parse_spec("o+:2 >= 0").unwrap().with_x2((1, 4).into())).unwrap();
    let x = Float::with_val(prec(), 0.5);
    let lam = lambda(&x);
    let mut total = WordSum::zero();
    for t in to_x_alphabet(&pi) {
        total.add_scaled(&t.scalar, &WordSum::from_word(t.word));
    }
    let v = ode_march(&MarchProblem { words: total, lower: lam, digits: 40 }).unwrap();
    let got = v.value.re.clone() * 2u32;
    assert!((got.to_f64() - 1.063459833).abs() < 1e-9, "{got}");
}

#[test]
fn deep_lower_limit_marches() {
    let w: XSymbolWord = "d[-i,+i] d[-1,+1] y~ y~".parse().unwrap();
    let x = Float::with_val(prec(), 1.0 - 2f64.powi(-20));
    let lam = lambda(&x);
    let a = march_word(&w, &lam, 40).unwrap();
    let b = march_word(&w, &Float::new(prec()), 40).unwrap();
    assert!(a.value.sub(&b.value).abs_f64() < 1e-2);
    assert!(a.err < 1e-30);
}

#[test]
fn divergent_words_are_refused() {
    let w: XSymbolWord = "x+1 x+i".parse().unwrap();
    assert_eq!(march_word(&w, &Float::new(prec()), 30).unwrap_err(), MarchError::Divergent("1"));
    let w: XSymbolWord = "x+i a".parse().unwrap();
    assert_eq!(march_word(&w, &Float::new(prec()), 30).unwrap_err(), MarchError::Divergent("0"));
    assert!(march_word(&w, &Float::with_val(prec(), 0.1), 30).is_ok());
}

#[test]
fn theta_engine_basics() {
    let p = prec();
    let one = Float::with_val(p, 1);
    let w = |s: &str| s.parse::<apery_words::OmegaWord>().unwrap();
    // ∫_0^1 ω3 ω1 = 2G, ∫ ω1 ω1 = π²/8
    let g = omega_march(&w("w3 w1"), &one, 40).unwrap();
    assert!((g.value - Float::with_val(p, Constant::Catalan) * 2u32).abs() < 1e-38);
    let v = omega_march(&w("w1 w1"), &one, 40).unwrap();
    assert!((v.value - Float::with_val(p, Constant::Pi).square() / 8u32).abs() < 1e-38);
    // ω8 at x = 1/2 is atanh(1/2); ω0 ω8 is Σ x^{2n+1}/(2n+1)²
    let half = Float::with_val(p, 0.5);
    let v = omega_march(&w("w8"), &half, 40).unwrap();
    assert!((v.value - Float::with_val(p, half.atanh_ref())).abs() < 1e-38);
    let x = Float::with_val(p, 0.9);
    let v = omega_march(&w("w0 w8"), &x, 40).unwrap();
    let mut s = Float::new(p);
    for n in 0..2000u32 {
        s += Float::with_val(p, x.clone().pow(2 * n + 1)) / ((2 * n + 1) * (2 * n + 1));
    }
    assert!((v.value - s).abs() < 1e-38);
}
