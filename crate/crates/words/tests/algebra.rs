use apery_numerics::{GaussianRational, Rational};
use apery_words::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

fn xw(s: &str) -> XWord {
    s.parse().unwrap()
}

/// All words obtained by filtering permutations of u ++ v that keep both orders.
fn brute_force_interleavings(u: &[u8], v: &[u8]) -> BTreeSet<Vec<u8>> {
    let n = u.len() + v.len();
    let mut out = BTreeSet::new();
    // positions taken by u, as a bitmask
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Vec::new();
        for k in 0..n {
            if mask & (1 << k) != 0 {
                w.push(u[i]);
                i += 1;
            } else {
                w.push(v[j]);
                j += 1;
            }
        }
        out.insert(w);
    }
    out
}

#[test]
fn shuffle_term_count_matches_brute_force() {
    let u: OmegaWord = "w0 w1".parse().unwrap();
    let v: OmegaWord = "w2 w3".parse().unwrap();
    let s = shuffle(&u, &v);
    assert_eq!(s.len(), 6);
    let brute = brute_force_interleavings(&[0, 1], &[2, 3]);
    assert_eq!(brute.len(), 6);
    let letters = [OmegaLetter::W0, OmegaLetter::W1, OmegaLetter::W2, OmegaLetter::W3];
    for b in brute {
        let w = Word(b.iter().map(|&k| letters[k as usize]).collect());
        assert_eq!(s.coefficient(&w), GaussianRational::one());
    }
}

#[test]
fn composite_expansion_examples() {
    let y = WordSum::from_word(Word(vec![XSymbol::Y]));
    let e = expand_composites(&y);
    assert_eq!(e.len(), 4);
    assert_eq!(e.coefficient(&xw("x-i")), GaussianRational::one());
    assert_eq!(e.coefficient(&xw("x+i")), GaussianRational::one());
    assert_eq!(e.coefficient(&xw("x-1")), GaussianRational::from(-1));
    assert_eq!(e.coefficient(&xw("x+1")), GaussianRational::from(-1));

    let w = WordSum::term(GaussianRational::i(), Word(vec![XSymbol::D(Root4::MinusI, Root4::I), XSymbol::D(Root4::MinusOne, Root4::One)]));
    let e = expand_composites(&w);
    assert_eq!(e.len(), 4);
    let i = GaussianRational::i();
    assert_eq!(e.coefficient(&xw("x-i x-1")), i);
    assert_eq!(e.coefficient(&xw("x-i x+1")), -&i);
    assert_eq!(e.coefficient(&xw("x+i x-1")), -&i);
    assert_eq!(e.coefficient(&xw("x+i x+1")), i);
}

#[test]
fn depth_seven_expansion_matches_pointwise_product() {
    let symbols = [XSymbol::Y, XSymbol::Z, XSymbol::D(Root4::MinusI, Root4::I), XSymbol::D(Root4::MinusOne, Root4::One), XSymbol::Mono(XLetter::A)];
    let mut rng = StdRng::seed_from_u64(7);
    let u = GaussianRational::real(Rational::from((1, 3)));
    for _ in 0..5 {
        let w: Vec<XSymbol> = (0..7).map(|_| symbols[rng.gen_range(0..symbols.len())]).collect();
        let e = expand_composites(&WordSum::from_word(Word(w.clone())));
        assert!(e.len() <= 4usize.pow(7));
        let mut lhs = GaussianRational::one();
        for s in &w {
            lhs = &lhs * &s.density(&u).unwrap();
        }
        let mut rhs = GaussianRational::zero();
        for (word, c) in e.iter() {
            let mut p = c.clone();
            for l in word.letters() {
                p = &p * &l.density(&u).unwrap();
            }
            rhs += &p;
        }
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn reversal_is_an_involution() {
    let w: OmegaWord = "w0 w3 w20 w1".parse().unwrap();
    let (s1, r1) = reverse_with_sign(&w);
    let (s2, r2) = reverse_with_sign(&r1);
    assert_eq!(s1 * s2, 1);
    assert_eq!(r2, w);
}

#[test]
fn json_serializes_words_as_strings() {
    let w = xw("a x+1 x-i q+i");
    assert_eq!(serde_json::to_string(&w).unwrap(), "\"a x+1 x-i q+i\"");
}

fn omega_word(max: usize) -> impl Strategy<Value = OmegaWord> {
    prop::collection::vec(prop::sample::select(OmegaLetter::ALL.to_vec()), 0..=max).prop_map(Word)
}

fn x_word(max: usize) -> impl Strategy<Value = XWord> {
    let letters = vec![XLetter::A, XLetter::X(Root4::One), XLetter::X(Root4::MinusOne), XLetter::X(Root4::I), XLetter::X(Root4::MinusI)];
    prop::collection::vec(prop::sample::select(letters), 0..=max).prop_map(Word)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn shuffle_commutes(u in omega_word(4), v in omega_word(4)) {
        prop_assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
    }

    #[test]
    fn shuffle_associates(u in omega_word(3), v in omega_word(3), w in omega_word(3)) {
        let l = shuffle(&u, &v).shuffle(&WordSum::from_word(w.clone()));
        let r = WordSum::from_word(u).shuffle(&shuffle(&v, &w));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn shuffle_count_is_binomial(u in omega_word(4), v in omega_word(4)) {
        let total = shuffle(&u, &v).coefficient_sum();
        let n = u.len() + v.len();
        let mut b = 1u64;
        for k in 0..u.len() {
            b = b * (n - k) as u64 / (k + 1) as u64;
        }
        prop_assert_eq!(total, GaussianRational::from(b as i64));
    }

    #[test]
    fn reg_round_trip(w in x_word(6)) {
        let r = reg_decompose(&w);
        for ws in r.coeffs.values() {
            for (u, _) in ws.iter() {
                prop_assert!(is_admissible(u));
            }
        }
        prop_assert_eq!(r.recompose(), WordSum::from_word(w));
    }

    #[test]
    fn li_index_round_trip(w in x_word(6)) {
        if let Ok(li) = word_to_li(&w) {
            prop_assert!(li.is_admissible());
            prop_assert_eq!(li_to_word(&li), w);
        }
    }

    #[test]
    fn text_round_trip(w in omega_word(8)) {
        prop_assert_eq!(w.to_string().parse::<OmegaWord>().unwrap(), w);
    }
}
