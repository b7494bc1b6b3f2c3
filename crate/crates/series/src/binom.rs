use apery_numerics::{Float, Integer, Rational};

/// `b_n = 4^n / C(2n, n)` exactly.
pub fn binom_weight(n: u32) -> Rational {
    let c = Integer::from(Integer::binomial_u(2 * n, n));
    Rational::from((Integer::from(1) << (2 * n), c))
}

/// `b_0, …, b_n_max` in floating point via `b_n = b_{n-1}·2n/(2n-1)`.
pub fn binom_weight_float(n_max: usize, prec: u32) -> Vec<Float> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut b = Float::with_val(prec, 1);
    out.push(b.clone());
    for n in 1..=n_max as u64 {
        b *= 2 * n;
        b /= 2 * n - 1;
        out.push(b.clone());
    }
    out
}
