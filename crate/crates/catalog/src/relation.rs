//! Integer relations between a value and catalog constants.

use crate::constants::constant;
use crate::CatalogError;
use apery_numerics::{Float, HPReal, Integer};
use std::fmt;

/// Largest coefficient accepted in a relation.
pub const HEIGHT_CAP: i64 = 100_000_000;

/// Extra digits used to re-verify a candidate relation.
pub const REVERIFY_DIGITS: u32 = 20;

/// `value_coeff · value + Σ coeffs_i · basis_i = 0` with `value_coeff < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub value_coeff: Integer,
    pub coeffs: Vec<Integer>,
    /// `|residual|` at the search precision.
    pub residual: f64,
}

impl Relation {
    /// Largest absolute coefficient.
    pub fn height(&self) -> Integer {
        self.coeffs.iter().chain(std::iter::once(&self.value_coeff)).map(|c| c.clone().abs()).max().unwrap_or_default()
    }

    /// `value = Σ (num_i/den_i) · basis_i` as reduced pairs `(num_i, den_i)`.
    pub fn rational_coeffs(&self) -> Vec<(Integer, Integer)> {
        let den = Integer::from(-&self.value_coeff);
        self.coeffs
            .iter()
            .map(|c| {
                let g = Integer::from(c.gcd_ref(&den));
                let g = if g == 0 { Integer::from(1) } else { g };
                (Integer::from(c / &g), Integer::from(&den / &g))
            })
            .collect()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·v", self.value_coeff)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            write!(f, " {} {}·b{}", if *c < 0 { '-' } else { '+' }, c.clone().abs(), k + 1)?;
        }
        f.write_str(" = 0")
    }
}

/// Outcome of a relation search.
#[derive(Clone, Debug)]
pub struct RelationSearch {
    pub relation: Option<Relation>,
    /// Lower bound on the Euclidean norm of any relation when none was found.
    pub norm_bound: f64,
}

enum Pslq {
    Found(Vec<Integer>),
    Exhausted(f64),
}

fn round_int(v: &Float) -> Integer {
    v.to_integer().unwrap_or_default()
}

/// Ferguson–Bailey PSLQ at the precision of `x`.
fn pslq(x: &[Float], tol: &Float, max_coeff: &Integer, max_steps: usize) -> Pslq {
    let n = x.len();
    let prec = x[0].prec();
    let f = |v: f64| Float::with_val(prec, v);
    let gamma = f(4.0 / 3.0).sqrt();
    let mut a: Vec<Vec<Integer>> = (0..n).map(|i| (0..n).map(|j| Integer::from((i == j) as i32)).collect()).collect();
    let mut b = a.clone();
    let mut s = vec![Float::new(prec); n];
    for k in 0..n {
        let mut acc = Float::new(prec);
        for v in &x[k..] {
            acc += Float::with_val(prec, v.square_ref());
        }
        s[k] = acc.sqrt();
    }
    let t = s[0].clone();
    let mut y: Vec<Float> = x.iter().map(|v| Float::with_val(prec, v / &t)).collect();
    for v in s.iter_mut() {
        *v /= &t;
    }
    let mut h = vec![vec![Float::new(prec); n - 1]; n];
    for i in 0..n {
        if i < n - 1 && !s[i].is_zero() {
            h[i][i] = Float::with_val(prec, &s[i + 1] / &s[i]);
        }
        for j in 0..i.min(n - 1) {
            let sjj = Float::with_val(prec, &s[j] * &s[j + 1]);
            if !sjj.is_zero() {
                h[i][j] = -Float::with_val(prec, &y[i] * &y[j]) / sjj;
            }
        }
    }
    let reduce = |i: usize, j: usize, h: &mut Vec<Vec<Float>>, y: &mut Vec<Float>, a: &mut Vec<Vec<Integer>>, b: &mut Vec<Vec<Integer>>| {
        if h[j][j].is_zero() {
            return;
        }
        let t = round_int(&Float::with_val(prec, &h[i][j] / &h[j][j]));
        if t == 0 {
            return;
        }
        let dy = Float::with_val(prec, &y[i] * &t);
        y[j] += dy;
        for k in 0..=j {
            let d = Float::with_val(prec, &h[j][k] * &t);
            h[i][k] -= d;
        }
        for k in 0..n {
            let d = Integer::from(&a[j][k] * &t);
            a[i][k] -= d;
            let d = Integer::from(&b[k][i] * &t);
            b[k][j] += d;
        }
    };
    for i in 1..n {
        for j in (0..i).rev() {
            reduce(i, j, &mut h, &mut y, &mut a, &mut b);
        }
    }
    let mut bound = 0.0;
    for _ in 0..max_steps {
        let mut m = 0;
        let mut best = f(-1.0);
        let mut g = gamma.clone();
        for i in 0..n - 1 {
            let v = Float::with_val(prec, &g * &h[i][i]).abs();
            if v > best {
                best = v;
                m = i;
            }
            g *= &gamma;
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 < n {
            let t0 = Float::with_val(prec, h[m][m].hypot_ref(&h[m][m + 1]));
            if t0.is_zero() {
                break;
            }
            let t1 = Float::with_val(prec, &h[m][m] / &t0);
            let t2 = Float::with_val(prec, &h[m][m + 1] / &t0);
            for row in h.iter_mut().skip(m) {
                let t3 = row[m].clone();
                let t4 = row[m + 1].clone();
                row[m] = Float::with_val(prec, &t1 * &t3) + Float::with_val(prec, &t2 * &t4);
                row[m + 1] = Float::with_val(prec, &t1 * &t4) - Float::with_val(prec, &t2 * &t3);
            }
        }
        for i in m + 1..n {
            for j in (0..=(i - 1).min(m + 1)).rev() {
                reduce(i, j, &mut h, &mut y, &mut a, &mut b);
            }
        }
        for i in 0..n {
            if y[i].clone().abs() < *tol {
                let v: Vec<Integer> = (0..n).map(|j| b[j][i].clone()).collect();
                if v.iter().all(|c| c.clone().abs() < *max_coeff) {
                    return Pslq::Found(v);
                }
            }
        }
        let mut rec = Float::new(prec);
        for row in &h {
            for v in row {
                if v.clone().abs() > rec {
                    rec = v.clone().abs();
                }
            }
        }
        bound = if rec.is_zero() { f64::INFINITY } else { rec.recip().to_f64() };
        if bound >= max_coeff.to_f64() {
            break;
        }
    }
    Pslq::Exhausted(bound)
}

fn residual(c0: &Integer, v: &Float, coeffs: &[Integer], basis: &[HPReal], prec: u32) -> f64 {
    let mut acc = Float::with_val(prec, v * c0);
    for (c, b) in coeffs.iter().zip(basis) {
        acc += Float::with_val(prec, &b.value * c);
    }
    acc.abs().to_f64()
}

fn search(value: &HPReal, recompute: Option<&dyn Fn(u32) -> Option<HPReal>>, basis: &[&str], digits: u32) -> Result<RelationSearch, CatalogError> {
    if basis.is_empty() || digits < 10 * basis.len() as u32 {
        return Err(CatalogError::Precision { digits, basis: basis.len() });
    }
    // the search sees exactly `digits` digits so finer structure cannot leak in
    let prec = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
    let bvals: Vec<HPReal> = basis.iter().map(|b| constant(b, digits)).collect::<Result<_, _>>()?;
    let mut x = vec![Float::with_val(prec, &value.value)];
    x.extend(bvals.iter().map(|b| Float::with_val(prec, &b.value)));
    let tol = Float::with_val(prec, 10f64.powi(-(digits as i32) + 6));
    let cap = Integer::from(HEIGHT_CAP);
    let found = match pslq(&x, &tol, &cap, 200 * x.len() * digits as usize) {
        Pslq::Found(v) => v,
        Pslq::Exhausted(norm_bound) => return Ok(RelationSearch { relation: None, norm_bound }),
    };
    let sign = if found[0] > 0 { -1 } else { 1 };
    let c0 = Integer::from(&found[0] * sign);
    if c0 == 0 {
        return Err(CatalogError::DependentBasis(basis.iter().map(|s| s.to_string()).collect()));
    }
    let coeffs: Vec<Integer> = found[1..].iter().map(|c| Integer::from(c * sign)).collect();
    let wide = value.prec().max(bvals[0].prec());
    let threshold = 10f64.powi(-(digits as i32) + 4);
    let r = residual(&c0, &value.value, &coeffs, &bvals, wide);
    if r >= threshold {
        return Ok(RelationSearch { relation: None, norm_bound: 0.0 });
    }
    let deep = digits + REVERIFY_DIGITS;
    let bdeep: Vec<HPReal> = basis.iter().map(|b| constant(b, deep)).collect::<Result<_, _>>()?;
    let (vdeep, deep_threshold) = match recompute.and_then(|f| f(deep)) {
        Some(v) => (v, 10f64.powi(-(deep as i32) + 4)),
        None => (value.clone(), threshold),
    };
    let rd = residual(&c0, &vdeep.value, &coeffs, &bdeep, vdeep.prec().max(bdeep[0].prec()));
    if rd >= deep_threshold {
        return Ok(RelationSearch { relation: None, norm_bound: 0.0 });
    }
    Ok(RelationSearch { relation: Some(Relation { value_coeff: c0, coeffs, residual: r }), norm_bound: 0.0 })
}

/// Searches for `c0·value + Σ c_i·basis_i = 0` with coefficients below
/// [`HEIGHT_CAP`], accepted when the residual is below `10^(4−digits)` both
/// at `digits` and with the basis recomputed [`REVERIFY_DIGITS`] deeper.
/// Requires `digits ≥ 10·|basis|`.
pub fn find_relation(value: &HPReal, basis: &[&str], digits: u32) -> Result<RelationSearch, CatalogError> {
    search(value, None, basis, digits)
}

/// [`find_relation`] where the value can itself be recomputed at higher
/// precision; re-verification then requires a residual below
/// `10^(4−digits−REVERIFY_DIGITS)`.
pub fn find_relation_with(value: impl Fn(u32) -> Option<HPReal>, basis: &[&str], digits: u32) -> Result<RelationSearch, CatalogError> {
    let v = value(digits).ok_or_else(|| CatalogError::Eval("value unavailable".into()))?;
    search(&v, Some(&value), basis, digits)
}
