use apery_compiler::{compile, Prefactor};
use apery_cov::*;
use apery_numerics::{Float, GaussianRational, Rational};
use apery_series::parse_spec;
use apery_words::{expand_composites, OmegaLetter, Word, WordSum, XLetter, XSymbolWord, XWord};

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn xs(s: &str) -> WordSum<XLetter> {
    expand_composites(&WordSum::from_word(s.parse::<XSymbolWord>().unwrap()))
}

#[test]
fn head_image_with_reversal_sign() {
    for m in 0..4usize {
        let mut letters = vec![OmegaLetter::W0; m];
        letters.extend([OmegaLetter::W3, OmegaLetter::W1]);
        let got = expand_composites(&map_word(&Word(letters)));
        // i(−1)^m (x_i − x_{−i})(x_1 − x_{−1}) ỹ^m
        let mut want = xs("d[+i,-i] d[+1,-1]");
        for _ in 0..m {
            want = want.concat(&xs("y~"));
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        assert_eq!(got, want.scale(&gr(0, sign)), "m={m}");
    }
}

#[test]
fn seven_zeta_three_word_image() {
    let got = expand_composites(&map_word(&"w1 w20 w1".parse().unwrap()));
    let d = xs("d[-i,+i]");
    let middle = {
        let mut s = WordSum::zero();
        for l in ["a", "x-1", "x+1"] {
            s.add_assign(&WordSum::from_word(l.parse::<XWord>().unwrap()));
        }
        s
    };
    let want = d.concat(&middle).concat(&d).scale(&gr(-1, 0));
    assert_eq!(got, want);
}

#[test]
fn empty_word_keeps_sign() {
    let t = to_x_alphabet(&apery_compiler::PrefactoredIntegral {
        terms: vec![apery_compiler::PiTerm { coeff: gr(3, 0), prefactor: Prefactor::F2, word: Word::empty() }],
        x2: Rational::from((1, 4)),
    });
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].scalar, gr(3, 0));
    assert!(t[0].word.is_empty());
}

#[test]
fn catalan_word_lowers_to_four_depth_two_values() {
    let pi = compile(&parse_spec("o+:2 >= 0").unwrap()).unwrap();
    let terms = to_x_alphabet(&pi);
    let ws = expand_at_one(&terms).unwrap();
    assert_eq!(ws.len(), 4);
    assert!(admissible_check(&ws).ok());
    let cm = to_cmzv(&terms).unwrap();
    let mut got: Vec<(String, GaussianRational)> = cm.terms.iter().map(|t| (t.index().to_string(), t.coeff.clone())).collect();
    got.sort_by(|a, b| a.0.cmp(&b.0));
    // i[Li(i,i) − Li(i,−i) − Li(−i,−i) + Li(−i,i)] = 2 Im(Li(i,−i) + Li(−i,−i))
    let mut want = vec![
        ("Li_{1,1}(i,i)".to_string(), gr(0, 1)),
        ("Li_{1,1}(i,-i)".to_string(), gr(0, -1)),
        ("Li_{1,1}(-i,-i)".to_string(), gr(0, -1)),
        ("Li_{1,1}(-i,i)".to_string(), gr(0, 1)),
    ];
    want.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(got, want);
}

#[test]
fn inadmissible_word_is_reported() {
    let ws = WordSum::from_word("x+1 x+i".parse::<XWord>().unwrap());
    let r = admissible_check(&ws);
    assert!(!r.ok());
    assert_eq!(r.violations[0].to_string(), "x+1 x+i");
    assert!(admissible_check(&xs("d[-i,+i] d[-1,+1]")).ok());
    let bad = vec![CovTerm { scalar: gr(1, 0), prefactor: Prefactor::F1, word: "x+1 x+i".parse().unwrap(), x2: Rational::from(1) }];
    assert!(matches!(to_cmzv(&bad), Err(CovError::NotAdmissible(_))));
}

#[test]
fn singular_prefactor_is_refused_at_one() {
    let t = vec![CovTerm { scalar: gr(1, 0), prefactor: Prefactor::F2, word: Word::empty(), x2: Rational::from(1) }];
    assert!(matches!(expand_at_one(&t), Err(CovError::SingularPrefactor(_))));
}

#[test]
fn letter_images_are_pullbacks() {
    // φ(ω)(u) = ω(t(u)) · t'(u) with t = (1−u²)/(1+u²)
    let prec = 192;
    for u in [Rational::from((1, 5)), Rational::from((1, 2))] {
        let uf = Float::with_val(prec, &u);
        let u2 = Float::with_val(prec, uf.square_ref());
        let t = Float::with_val(prec, 1u32 - &u2) / Float::with_val(prec, 1u32 + &u2);
        let dt = Float::with_val(prec, &uf * -4i32) / Float::with_val(prec, 1u32 + &u2).square();
        let ug = GaussianRational::real(u.clone());
        for l in OmegaLetter::ALL {
            let want = Float::with_val(prec, l.density(&t) * &dt);
            let mut got = GaussianRational::zero();
            for (c, s) in phi(l) {
                got += &(&c * &s.density(&ug).unwrap());
            }
            let g = got.to_cx(prec);
            assert!((g.re - &want).abs() < 1e-50, "{l} at u={u}");
            assert!(g.im.abs() < 1e-50);
        }
    }
}

#[test]
fn reversal_twice_is_identity() {
    let w: Word<OmegaLetter> = "w0 w3 w2 w1".parse().unwrap();
    let (s1, r1) = apery_words::reverse_with_sign(&w);
    let (s2, r2) = apery_words::reverse_with_sign(&r1);
    assert_eq!(s1 * s2, 1);
    assert_eq!(r2, w);
}

#[test]
fn lower_limit_is_decreasing_and_zero_at_one() {
    let mk = |x2: Rational| CovTerm { scalar: gr(1, 0), prefactor: Prefactor::F1, word: Word::empty(), x2 };
    assert!(mk(Rational::from(1)).lower_limit(128).is_zero());
    let mut prev = Float::with_val(128, 2);
    for k in 1..10 {
        let l = mk(Rational::from((k, 10))).lower_limit(128);
        assert!(l < prev);
        prev = l;
    }
    // λ at x = 3/5 is 1/2
    let l = mk(Rational::from((9, 25))).lower_limit(128);
    assert!((l - 0.5f64).abs() < 1e-35);
}

#[test]
fn terms_serialize() {
    let pi = compile(&parse_spec("o+:2 >= 0").unwrap().with_x2(Rational::from((1, 4)))).unwrap();
    for t in to_x_alphabet(&pi) {
        let back: CovTerm = serde_json_roundtrip(&t);
        assert_eq!(back, t);
    }
}

fn serde_json_roundtrip(t: &CovTerm) -> CovTerm {
    let s = serde_json::to_string(t).unwrap();
    serde_json::from_str(&s).unwrap()
}
