use apery_compiler::*;
use apery_normalizer::is_canonical;
use apery_numerics::{GaussianRational, Rational};
use apery_series::*;
use apery_words::{OmegaLetter, OmegaWord};
use proptest::prelude::*;

fn spec(s: &str) -> SeriesSpec {
    parse_spec(s).unwrap()
}

fn w(s: &str) -> OmegaWord {
    s.parse().unwrap()
}

fn terms(p: &PrefactoredIntegral) -> Vec<(GaussianRational, Prefactor, OmegaWord)> {
    p.terms.iter().map(|t| (t.coeff.clone(), t.prefactor, t.word.clone())).collect()
}

#[test]
fn golden_head_rules() {
    let one = GaussianRational::one;
    assert_eq!(terms(&compile(&spec("o+:2 >= 0")).unwrap()), vec![(one(), Prefactor::F3, w("w3 w1"))]);
    assert_eq!(terms(&compile(&spec("e:2 > o+:1 >= 0")).unwrap()), vec![(one(), Prefactor::F1, w("w1 w20 w1"))]);
    assert_eq!(
        terms(&compile(&spec("o-:2 > 0")).unwrap()),
        vec![(one(), Prefactor::F5, w("w0 w3 w1")), (one(), Prefactor::F5, w("w3 w1"))]
    );
    assert_eq!(
        terms(&compile(&spec("o-:1 > o+:2 >= 0").with_x2(Rational::from((1, 4)))).unwrap()),
        vec![(one(), Prefactor::F5, w("w3 w3 w3 w1")), (one(), Prefactor::F2, w("w3 w3 w1"))]
    );
}

#[test]
fn squared_head_rules() {
    let p = compile_squared(&spec("o+:4 >= e:1 > 0").with_binom_power(2)).unwrap();
    assert_eq!(terms(&p), vec![(GaussianRational::one(), Prefactor::F1, w("w1 w0 w3 w2 w1"))]);
    let p = compile_squared(&spec("o-:3 > e:1 > 0").with_binom_power(2)).unwrap();
    assert_eq!(p.terms.len(), 3);
    assert_eq!(p.terms[1].coeff, GaussianRational::from(2));
    assert_eq!(p.terms[1].word, w("w1 w0 w3 w2 w1"));
    let e = compile_squared(&spec("o+:2 >= 0").with_binom_power(2));
    assert_eq!(e, Err(CompileError::HeadTooSmall));
}

#[test]
fn refusals() {
    assert_eq!(compile(&spec("e:1 > o+:2 >= 0")), Err(CompileError::SingularPrefactor));
    assert!(matches!(compile(&spec("e:2 >= o+:1 > 0")), Err(CompileError::NotCanonical(_))));
    assert!(matches!(compile(&spec("e:2 > o-:1 > 0")), Err(CompileError::NotCanonical(_))));
    let native = compile_with(&spec("e:2 > o-:1 > 0"), Mode::Native).unwrap();
    assert!(native.terms.iter().any(|t| t.word.count(&OmegaLetter::W5) == 1));
}

#[test]
fn display_separates_the_tail() {
    let p = compile(&spec("o+:3 >= 0")).unwrap();
    assert_eq!(p.to_string(), "(1) [f3] w0 w3 | w1\n");
}

#[test]
fn odd_power_words() {
    assert_eq!(odd_power_word(&[2]), w("w0 w8"));
    assert_eq!(odd_power_word(&[1]), w("w8"));
    assert_eq!(odd_power_word(&[2, 1]), w("w0 w2 w8"));
}

fn arb_canonical(allow_ominus: bool) -> impl Strategy<Value = SeriesSpec> {
    let form = prop_oneof![Just(Form::E), Just(Form::OPlus), Just(Form::OMinus)];
    (form.clone(), 2u32..5, prop::collection::vec((prop_oneof![Just(Form::E), Just(Form::OPlus)], 1u32..4), 0..4)).prop_filter_map(
        "canonical",
        move |(hf, he, rest)| {
            if !allow_ominus && hf == Form::OMinus {
                return None;
            }
            let mut factors = vec![Factor { form: hf, exp: he }];
            factors.extend(rest.iter().map(|&(form, exp)| Factor { form, exp }));
            let junctions = factors.iter().map(|f| f.form.native_junction()).collect();
            let s = SeriesSpec::new(factors, junctions);
            (is_canonical(&s) && validate(&s).is_empty()).then_some(s)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_length_bookkeeping(s in arb_canonical(true)) {
        let p = compile(&s).unwrap();
        let weight = s.weight() as usize;
        for t in &p.terms {
            let len = t.word.len();
            if s.factors[0].form == Form::OMinus {
                prop_assert!(len == weight || len == weight + 1);
            } else {
                prop_assert_eq!(len, weight);
            }
            prop_assert_eq!(t.word.count(&OmegaLetter::W5), 0);
            prop_assert_eq!(t.word.count(&OmegaLetter::Wdt), 0);
            prop_assert_eq!(t.word.letters().last(), Some(&OmegaLetter::W1));
        }
    }

    #[test]
    fn omega1_parity(s in arb_canonical(false)) {
        let p = compile(&s).unwrap();
        let want = if s.factors[0].form == Form::E { 0 } else { 1 };
        for t in &p.terms {
            prop_assert_eq!(t.word.count(&OmegaLetter::W1) % 2, want, "{}", s.dsl());
        }
    }

    #[test]
    fn squared_lengths(s in arb_canonical(true)) {
        let mut s = s.with_binom_power(2);
        s.factors[0].exp += 1;
        let p = compile_squared(&s).unwrap();
        let weight = s.weight() as usize;
        for t in &p.terms {
            let len = t.word.len();
            if s.factors[0].form == Form::OMinus {
                prop_assert!((weight..=weight + 2).contains(&len));
            } else {
                prop_assert_eq!(len, weight);
            }
        }
    }
}
