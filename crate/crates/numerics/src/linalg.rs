//! Small dense linear algebra over MPFR floats.

use rug::{Assign, Float};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` for a numerically singular matrix.
pub fn solve(mut a: Vec<Vec<Float>>, mut b: Vec<Float>) -> Option<Vec<Float>> {
    let n = b.len();
    if n == 0 {
        return Some(vec![]);
    }
    let prec = b[0].prec();
    let mut t = Float::new(prec);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            let ai = a[i][col].clone().abs();
            let aj = a[j][col].clone().abs();
            ai.partial_cmp(&aj).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = Float::with_val(prec, &a[row][col] / &a[col][col]);
            for k in col..n {
                t.assign(&f * &a[col][k]);
                a[row][k] -= &t;
            }
            t.assign(&f * &b[col]);
            b[row] -= &t;
        }
    }
    let mut x = vec![Float::new(prec); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            t.assign(&a[row][k] * &x[k]);
            acc -= &t;
        }
        x[row] = Float::with_val(prec, &acc / &a[row][row]);
        if !x[row].is_finite() {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let p = 128;
        let f = |v: f64| Float::with_val(p, v);
        let a = vec![vec![f(2.0), f(1.0)], vec![f(1.0), f(3.0)]];
        let x = solve(a, vec![f(3.0), f(5.0)]).unwrap();
        assert!((x[0].to_f64() - 0.8).abs() < 1e-30);
        assert!((x[1].to_f64() - 1.4).abs() < 1e-30);
    }
}
