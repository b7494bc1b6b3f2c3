use crate::spec::{Factor, Form, Junction, SeriesSpec};

/// Outer factor of a chain sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainHead {
    /// 1/n^p, summed over n ≥ 1
    N(u32),
    /// 1/(2n+1)^q, summed over n ≥ 0
    OPlus(u32),
}

#[derive(Clone, Copy, PartialEq)]
enum Chain {
    Zeta,
    T,
}

/// Splits `Σ_n b_n^p ζ_n(k) t_n(l) / head(n)` into mixed-parity specs, where
/// `ζ_n(k) = Σ_{n ≥ m_1 > … > 0} Π m_i^{-k_i}` and
/// `t_n(l) = Σ_{n > r_1 > … ≥ 0} Π (2r_i+1)^{-l_i}`.
///
/// A ζ-index and a t-index satisfy exactly one of `m > r` or `r ≥ m`, so the
/// specs are all interleavings of the two chains with those junctions.
pub fn interleave_chains(k: &[u32], l: &[u32], head: ChainHead, binom_power: u8) -> Vec<SeriesSpec> {
    let head_factor = match head {
        ChainHead::N(p) => Factor { form: Form::N, exp: p },
        ChainHead::OPlus(q) => Factor { form: Form::OPlus, exp: q },
    };
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(k.len() + l.len());
    interleavings(k.len(), l.len(), &mut seq, &mut |order: &[Chain]| {
        let mut factors = vec![head_factor];
        let (mut ki, mut li) = (0, 0);
        for c in order {
            match c {
                Chain::Zeta => {
                    factors.push(Factor { form: Form::N, exp: k[ki] });
                    ki += 1;
                }
                Chain::T => {
                    factors.push(Factor { form: Form::OPlus, exp: l[li] });
                    li += 1;
                }
            }
        }
        let mut junctions = Vec::with_capacity(factors.len());
        // head to first element
        junctions.push(match order.first() {
            Some(Chain::Zeta) => Junction::Weak,
            Some(Chain::T) => Junction::Strict,
            None => match head {
                ChainHead::N(_) => Junction::Strict,
                ChainHead::OPlus(_) => Junction::Weak,
            },
        });
        for w in order.windows(2) {
            junctions.push(match (w[0], w[1]) {
                (Chain::T, Chain::Zeta) => Junction::Weak,
                _ => Junction::Strict,
            });
        }
        if let Some(last) = order.last() {
            junctions.push(match last {
                Chain::Zeta => Junction::Strict,
                Chain::T => Junction::Weak,
            });
        }
        out.push(SeriesSpec::new(factors, junctions).with_binom_power(binom_power));
    });
    out
}

fn interleavings(a: usize, b: usize, seq: &mut Vec<Chain>, emit: &mut impl FnMut(&[Chain])) {
    if a == 0 && b == 0 {
        emit(seq);
        return;
    }
    if a > 0 {
        seq.push(Chain::Zeta);
        interleavings(a - 1, b, seq, emit);
        seq.pop();
    }
    if b > 0 {
        seq.push(Chain::T);
        interleavings(a, b - 1, seq, emit);
        seq.pop();
    }
}
