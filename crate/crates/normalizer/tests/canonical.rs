use apery_normalizer::*;
use apery_numerics::{bits_for_digits, Float, GaussianRational, Rational};
use apery_series::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn spec(s: &str) -> SeriesSpec {
    parse_spec(s).unwrap()
}

fn random_spec(rng: &mut StdRng, max_depth: usize, max_weight: u32) -> SeriesSpec {
    let forms = [Form::E, Form::OPlus, Form::OMinus, Form::N];
    loop {
        let d = rng.gen_range(1..=max_depth);
        let factors: Vec<Factor> = (0..d).map(|_| Factor { form: forms[rng.gen_range(0..4)], exp: rng.gen_range(1..=3) }).collect();
        let junctions = (0..d).map(|_| if rng.gen_bool(0.5) { Junction::Weak } else { Junction::Strict }).collect();
        let s = SeriesSpec::new(factors, junctions).with_x2(Rational::from((9, 16)));
        if s.weight() <= max_weight && validate(&s).is_empty() {
            return s;
        }
    }
}

fn combo_value(c: &SpecCombo, digits: u32) -> Float {
    let prec = bits_for_digits(digits);
    let mut acc = Float::with_val(prec, &c.constant.re);
    for t in &c.terms {
        assert_eq!(t.coeff.im, 0);
        let v = oracle_eval(&t.spec, digits).unwrap();
        acc += Float::with_val(prec, &t.coeff.re) * v.value.re;
    }
    acc
}

#[test]
fn canonical_input_is_fixed() {
    for s in ["o+:2 >= 0", "e:2 > o+:1 >= 0", "o-:2 > 0", "o-:2 > e:1 > o+:3 >= 0"] {
        let c = canonicalize(&spec(s)).unwrap();
        assert_eq!(c.terms.len(), 1, "{s}");
        assert_eq!(c.terms[0].coeff, GaussianRational::one());
        assert_eq!(c.terms[0].spec, spec(s));
        assert!(c.constant.is_zero());
    }
}

#[test]
fn example_s_splits_off_a_divergent_bundle() {
    let c = canonicalize(&spec("n:2 >= o+:1 >= o-:1 > 0")).unwrap();
    assert!(c.contains_divergent_piece);
    let main = c.terms.iter().find(|t| t.spec == spec("e:2 > o+:1 >= o+:1 >= 0")).unwrap();
    assert_eq!(main.coeff, GaussianRational::from(4));
    assert!(!main.divergent);
    assert!(c.bundle().all(|t| t.spec.factors[0].exp == 1));
}

#[test]
fn sigma_chi_chain_drops_weight() {
    let c = canonicalize(&spec("e:2 > o-:1 > 0")).unwrap();
    let find = |s: &str| c.terms.iter().find(|t| t.spec == spec(s)).map(|t| t.coeff.clone());
    assert_eq!(find("e:2 > o+:1 >= 0"), Some(GaussianRational::one()));
    assert_eq!(find("e:2 > 0"), Some(GaussianRational::one()));
    assert_eq!(find("e:1 > 0"), Some(GaussianRational::one()));
    assert_eq!(find("o-:1 > 0"), Some(GaussianRational::from(-1)));
    assert!(c.contains_divergent_piece);
}

#[test]
fn value_is_preserved_at_nine_sixteenths() {
    let mut rng = StdRng::seed_from_u64(20);
    for _ in 0..20 {
        let s = random_spec(&mut rng, 3, 6);
        let c = canonicalize(&s).unwrap();
        let lhs = oracle_eval(&s, 30).unwrap().value.re;
        let rhs = combo_value(&c, 30);
        assert!((lhs.clone() - &rhs).abs() < 1e-15, "{s}: {lhs} vs {rhs}");
    }
}

#[test]
fn alias_rescaling_coefficient() {
    let c = canonicalize(&spec("n:3 > 0")).unwrap();
    assert_eq!(c.terms[0].coeff, GaussianRational::from(8));
    assert_eq!(c.terms[0].spec, spec("e:3 > 0"));
}

fn arb_valid_spec() -> impl Strategy<Value = SeriesSpec> {
    let form = prop_oneof![Just(Form::E), Just(Form::OPlus), Just(Form::OMinus), Just(Form::N)];
    let junction = prop_oneof![Just(Junction::Strict), Just(Junction::Weak)];
    prop::collection::vec((form, 1u32..4, junction), 1..5)
        .prop_map(|fs| {
            let factors = fs.iter().map(|(f, e, _)| Factor { form: *f, exp: *e }).collect();
            SeriesSpec::new(factors, fs.iter().map(|x| x.2).collect()).with_x2(Rational::from((1, 4)))
        })
        .prop_filter("valid", |s| validate(s).is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn output_is_canonical_and_idempotent(s in arb_valid_spec()) {
        let c = canonicalize(&s).unwrap();
        for t in &c.terms {
            prop_assert!(is_canonical(&t.spec));
            prop_assert!(t.spec.factors.iter().skip(1).all(|f| f.form != Form::OMinus));
            prop_assert!(t.spec.depth() <= s.depth());
            prop_assert!(t.spec.weight() <= s.weight());
            prop_assert!(validate(&t.spec).is_empty());
            let again = canonicalize(&t.spec).unwrap();
            prop_assert_eq!(again.terms.len(), 1);
            prop_assert_eq!(&again.terms[0].spec, &t.spec);
            prop_assert_eq!(&again.terms[0].coeff, &GaussianRational::one());
        }
    }

    #[test]
    fn each_rewrite_lowers_the_measure(s in arb_valid_spec()) {
        let (_, start) = rescale_alias(&s);
        let mut stack = vec![start];
        let mut steps = 0;
        while let Some(cur) = stack.pop() {
            if let Some(parts) = rewrite_step(&cur).unwrap() {
                for (_, p) in parts {
                    prop_assert!(measure(&p) < measure(&cur), "{} -> {}", cur.dsl(), p.dsl());
                    if p.depth() > 0 {
                        stack.push(p);
                    }
                }
            }
            steps += 1;
            prop_assert!(steps < 100_000);
        }
    }
}
