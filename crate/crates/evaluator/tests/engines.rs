use apery_evaluator::*;
use apery_numerics::{bits_for_digits, Float};
use apery_words::{li_to_word, word_to_li, LiIndex, Root4, XWord};
use rug::float::Constant;

fn zero() -> Float {
    Float::new(bits_for_digits(40))
}

fn word(s: &str) -> XWord {
    s.parse().unwrap()
}

#[test]
fn dilog_at_minus_i_matches_march() {
    let li = word_to_li(&word("a x+i")).unwrap();
    assert_eq!(li.to_string(), "Li_{2}(-i)");
    let a = mpl_sum(&li.s, &li.z, 40).unwrap();
    let b = march_word(&word("a x+i"), &zero(), 40).unwrap();
    let d = a.value.sub(&b.value).abs_f64();
    assert!(d < 1e-15, "diff {d:e} est {:e}", a.err);
}

#[test]
fn beta_values_from_imaginary_parts() {
    let p = bits_for_digits(40);
    let g = Float::with_val(p, Constant::Catalan);
    let v = mpl_sum(&[2], &[Root4::I], 40).unwrap();
    assert!((v.value.im.clone() * 2u32 - g * 2u32).abs() < 1e-15);
    // β(4) from Li_4(i)
    let v = mpl_sum(&[4], &[Root4::I], 40).unwrap();
    let b4 = 0.988_944_551_741_105_3_f64;
    assert!((v.value.im.to_f64() - b4).abs() < 1e-15);
}

#[test]
fn divergent_and_deferred_indices() {
    assert!(matches!(mpl_sum(&[1], &[Root4::One], 30), Err(MplError::NotAdmissible)));
    assert!(matches!(mpl_sum(&[1, 2], &[Root4::I, Root4::One], 30), Err(MplError::Deferred)));
}

#[test]
fn conditional_depth_two_matches_march() {
    for w in ["x+i x-1", "x-i x+1", "x-1 a x+i", "x+i x+1 x-i", "a x-1 x+1"] {
        let w = word(w);
        let li: LiIndex = word_to_li(&w).unwrap();
        assert_eq!(li_to_word(&li), w);
        let a = mpl_index(&li, 40).unwrap();
        let b = march_word(&w, &zero(), 40).unwrap();
        let d = a.value.sub(&b.value).abs_f64();
        assert!(d < 1e-12, "{w}: diff {d:e} est {:e}", a.err);
    }
}
