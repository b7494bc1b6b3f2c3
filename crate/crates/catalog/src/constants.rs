//! Named constants, their defining evaluations and a process-wide cache.

use crate::CatalogError;
use apery_evaluator::march_word;
use apery_numerics::{bits_for_digits, Cx, Float, HPReal, Rational};
use apery_words::{li_to_word, LiIndex, Root4};
use rug::float::Constant;
use rug::ops::Pow;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Guard digits used for every evaluation.
const GUARD: u32 = 10;

/// The named entries, in display order.
pub const ENTRIES: &[&str] = &[
    "pi",
    "log2",
    "G",
    "zeta(2)",
    "zeta(3)",
    "zeta(5)",
    "beta(4)",
    "Li1(1/2)",
    "Li2(1/2)",
    "Li3(1/2)",
    "Li4(1/2)",
    "Li5(1/2)",
    "Li6(1/2)",
    "ImLi3((1+i)/2)",
    "ImLi4((1+i)/2)",
    "ImLi5((1+i)/2)",
    "ImLi_{4,1}(i,1)",
    "ImLi_{4,1}(i,-1)",
    "ReLi_{3,1,1}(1,1,i)",
    "ReLi_{4,2}(-1,i)",
    "ReLi_{3,1,1,1}(1,1,1,i)",
    "zeta(-5,1)",
    "G^2",
    "W4",
    "W5",
    "W6",
];

type Combination = &'static [(i64, i64, &'static str)];

const W4: Combination = &[
    (-2, 1, "G^2"),
    (-49, 720, "pi^4"),
    (2, 1, "pi*ImLi3((1+i)/2)"),
    (-11, 48, "pi^2*log2^2"),
    (1, 6, "log2^4"),
    (2, 1, "G*pi*log2"),
    (4, 1, "Li4(1/2)"),
];

const W5: Combination = &[
    (5, 1, "log2*Li4(1/2)"),
    (21, 1, "Li5(1/2)"),
    (16, 1, "pi*ImLi4((1+i)/2)"),
    (-17, 1, "pi*beta(4)"),
    (8, 1, "pi*ImLi3((1+i)/2)*log2"),
    (379, 2880, "pi^4*log2"),
    (1, 30, "log2^5"),
    (-16, 1, "ReLi_{3,1,1}(1,1,i)"),
    (-1, 12, "pi^2*log2^3"),
    (29, 192, "pi^2*zeta(3)"),
    (-27, 4, "zeta(5)"),
];

const W6: Combination = &[
    (68, 1, "Li6(1/2)"),
    (-7655, 27648, "pi^6"),
    (61, 2, "pi*ImLi_{4,1}(i,1)"),
    (-41, 2, "pi*ImLi_{4,1}(i,-1)"),
    (96, 1, "pi*ImLi5((1+i)/2)"),
    (-19, 1, "pi*beta(4)*log2"),
    (32, 1, "pi*ImLi4((1+i)/2)*log2"),
    (-181, 2880, "pi^4*log2^2"),
    (-1, 96, "pi^2*log2^4"),
    (1, 90, "log2^6"),
    (-169, 4, "zeta(-5,1)"),
    (-5, 12, "pi^2*Li4(1/2)"),
    (10, 1, "log2*Li5(1/2)"),
    (-24, 1, "G*beta(4)"),
    (-6, 1, "pi^2*log2*zeta(3)"),
    (-24, 1, "ReLi_{4,2}(-1,i)"),
    (64, 1, "ReLi_{3,1,1,1}(1,1,1,i)"),
    (8195, 128, "zeta(3)^2"),
    (2821, 32, "log2*zeta(5)"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Re,
    Im,
}

/// A single constant before products and powers.
#[derive(Clone, Debug)]
enum Atom {
    One,
    Pi,
    Log2,
    Catalan,
    Zeta(u32),
    Beta(u32),
    /// `Li_k(1/2)`
    LiHalf(u32),
    /// `Li_k((1+i)/2)`
    LiHalfI(u32, Part),
    /// `Li_s(z)` at fourth roots of unity
    Mpl(LiIndex, Part),
    Composite(Combination),
}

fn root(s: &str) -> Option<Root4> {
    match s {
        "1" => Some(Root4::One),
        "i" => Some(Root4::I),
        "-1" => Some(Root4::MinusOne),
        "-i" => Some(Root4::MinusI),
        _ => None,
    }
}

fn int_list(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|t| t.parse().ok()).collect()
}

/// `Li_s(z)` arguments, `s` given as `k` or `{s1,…}`.
fn parse_li(rest: &str) -> Option<(Vec<u32>, &str)> {
    let (s, args) = if let Some(r) = rest.strip_prefix('{') {
        let close = r.find('}')?;
        (&r[..close], &r[close + 1..])
    } else {
        let open = rest.find('(')?;
        (&rest[..open], &rest[open..])
    };
    let s: Vec<u32> = s.split(',').map(|t| t.parse().ok().filter(|&e: &u32| e > 0)).collect::<Option<_>>()?;
    Some((s, args.strip_prefix('(')?.strip_suffix(')')?))
}

fn parse_atom(name: &str) -> Option<Atom> {
    match name {
        "1" => return Some(Atom::One),
        "pi" => return Some(Atom::Pi),
        "log2" => return Some(Atom::Log2),
        "G" => return Some(Atom::Catalan),
        "W4" => return Some(Atom::Composite(W4)),
        "W5" => return Some(Atom::Composite(W5)),
        "W6" => return Some(Atom::Composite(W6)),
        _ => {}
    }
    if let Some(args) = name.strip_prefix("zeta(").and_then(|r| r.strip_suffix(')')) {
        let s = int_list(args)?;
        if s.contains(&0) {
            return None;
        }
        if s.len() == 1 && s[0] >= 2 {
            return Some(Atom::Zeta(s[0] as u32));
        }
        // signed arguments mark alternating signs
        let li = LiIndex {
            s: s.iter().map(|e| e.unsigned_abs() as u32).collect(),
            z: s.iter().map(|&e| if e < 0 { Root4::MinusOne } else { Root4::One }).collect(),
        };
        return li.is_admissible().then_some(Atom::Mpl(li, Part::Re));
    }
    if let Some(args) = name.strip_prefix("beta(").and_then(|r| r.strip_suffix(')')) {
        return args.parse().ok().filter(|&k| k >= 1).map(Atom::Beta);
    }
    let (part, rest) = if let Some(r) = name.strip_prefix("ReLi") {
        (Some(Part::Re), r)
    } else if let Some(r) = name.strip_prefix("ImLi") {
        (Some(Part::Im), r)
    } else {
        (None, name.strip_prefix("Li")?)
    };
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    let (s, args) = parse_li(rest)?;
    match args {
        "1/2" if s.len() == 1 && part != Some(Part::Im) => return Some(Atom::LiHalf(s[0])),
        "(1+i)/2" if s.len() == 1 => return Some(Atom::LiHalfI(s[0], part?)),
        _ => {}
    }
    let z: Vec<Root4> = args.split(',').map(root).collect::<Option<_>>()?;
    let li = LiIndex { s, z };
    if li.s.len() != li.z.len() || !li.is_admissible() {
        return None;
    }
    Some(Atom::Mpl(li, part.unwrap_or(Part::Re)))
}

/// Splits at `sep` outside parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// A product `Π atom^k` parsed from `a*b^2*…`.
fn parse_product(name: &str) -> Option<Vec<(Atom, u32)>> {
    split_top(name, '*')
        .into_iter()
        .map(|f| {
            let parts = split_top(f, '^');
            match parts.as_slice() {
                [a] => Some((parse_atom(a)?, 1)),
                [a, k] => Some((parse_atom(a)?, k.parse().ok().filter(|&k: &u32| k >= 1)?)),
                _ => None,
            }
        })
        .collect()
}

/// Removes whitespace, the key under which a name is cached.
pub fn canonical_name(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

/// True when `name` denotes a computable constant.
pub fn is_known(name: &str) -> bool {
    parse_product(&canonical_name(name)).is_some()
}

fn mul(a: &HPReal, b: &HPReal) -> HPReal {
    let prec = a.prec().max(b.prec());
    let v = Float::with_val(prec, &a.value * &b.value);
    let err = a.value.to_f64().abs() * b.err + b.value.to_f64().abs() * a.err + a.err * b.err;
    HPReal::new(v, err)
}

fn tiny(prec: u32, v: &Float) -> f64 {
    v.to_f64().abs().max(1.0) * 2f64.powi(-(prec.min(1000) as i32) + 2)
}

/// `Σ_{k≥0} (−1)^k/(2k+1)^s` by the Cohen–Rodriguez Villegas–Zagier transform.
fn dirichlet_beta(s: u32, digits: u32) -> HPReal {
    let prec = bits_for_digits(digits);
    let n = (digits as f64 * std::f64::consts::LN_10 / (3.0 + 8f64.sqrt()).ln()).ceil() as u64 + 3;
    let root8 = Float::with_val(prec, 8u32).sqrt();
    let d = Float::with_val(prec, root8 + 3u32).pow(n);
    let d = Float::with_val(prec, &d + Float::with_val(prec, d.recip_ref())) / 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut sum = Float::new(prec);
    for k in 0..n {
        c = Float::with_val(prec, &b - &c);
        let a = Float::with_val(prec, 2 * k + 1).pow(s).recip();
        sum += Float::with_val(prec, &c * &a);
        let (kf, nf) = (k as f64, n as f64);
        b *= (kf + nf) * (kf - nf);
        b /= (kf + 0.5) * (kf + 1.0);
    }
    let v = sum / &d;
    let err = 3.0 * (3.0 + 8f64.sqrt()).powi(-(n as i32)) + tiny(prec, &v);
    HPReal::new(v, err)
}

/// `Σ_{n≥1} z^n/n^k` for `|z| = r < 1`, stopped once `r^n` drops below the target.
fn geometric_polylog(k: u32, z: &Cx, r: f64, digits: u32) -> (Cx, f64) {
    let prec = bits_for_digits(digits);
    let target = 10f64.powi(-(digits as i32) - 2);
    let mut pow = z.clone();
    let mut acc = Cx::zero(prec);
    let mut n = 1u64;
    loop {
        let w = Float::with_val(prec, n).pow(k).recip();
        acc.add_assign(&pow.scale(&w));
        n += 1;
        pow.mul_assign(z);
        let bound = r.powi(n as i32) / (1.0 - r);
        if bound < target {
            return (acc, bound);
        }
    }
}

fn eval_atom(a: &Atom, digits: u32) -> Result<HPReal, CatalogError> {
    let prec = bits_for_digits(digits);
    let constant = |v: Float| {
        let err = tiny(prec, &v);
        HPReal::new(v, err)
    };
    Ok(match a {
        Atom::One => HPReal::exact(Float::with_val(prec, 1)),
        Atom::Pi => constant(Float::with_val(prec, Constant::Pi)),
        Atom::Log2 => constant(Float::with_val(prec, Constant::Log2)),
        Atom::Catalan => constant(Float::with_val(prec, Constant::Catalan)),
        Atom::Zeta(k) => constant(Float::with_val(prec, *k).zeta()),
        Atom::Beta(k) => dirichlet_beta(*k, digits),
        Atom::LiHalf(k) => {
            let z = Cx::from_real(Float::with_val(prec, 0.5));
            let (v, err) = geometric_polylog(*k, &z, 0.5, digits);
            HPReal::new(v.re, err)
        }
        Atom::LiHalfI(k, part) => {
            let z = Cx::from_f64(prec, 0.5, 0.5);
            let (v, err) = geometric_polylog(*k, &z, 0.5f64.sqrt(), digits);
            HPReal::new(if *part == Part::Re { v.re } else { v.im }, err)
        }
        Atom::Mpl(li, part) => {
            let v = march_word(&li_to_word(li), &Float::new(prec), digits).map_err(|e| CatalogError::Eval(format!("{li}: {e}")))?;
            HPReal::new(if *part == Part::Re { v.value.re } else { v.value.im }, v.err)
        }
        Atom::Composite(terms) => {
            let mut acc = Float::new(prec);
            let mut err = 0.0;
            for &(p, q, expr) in terms.iter() {
                let v = eval_name(expr, digits)?;
                let c = Rational::from((p, q));
                acc += Float::with_val(prec, &v.value * &c);
                err += v.err * c.to_f64().abs();
            }
            HPReal::new(acc, err)
        }
    })
}

fn eval_name(name: &str, digits: u32) -> Result<HPReal, CatalogError> {
    let factors = parse_product(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
    let prec = bits_for_digits(digits);
    let mut acc = HPReal::exact(Float::with_val(prec, 1));
    for (atom, k) in &factors {
        let v = eval_atom(atom, digits)?;
        for _ in 0..*k {
            acc = mul(&acc, &v);
        }
    }
    Ok(acc)
}

/// Values keyed by canonical name, each at the highest precision computed so far.
fn cache() -> &'static RwLock<HashMap<String, (u32, HPReal)>> {
    static CACHE: OnceLock<RwLock<HashMap<String, (u32, HPReal)>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The constant `name` to `digits` digits. Names are catalog entries, the
/// families `zeta(k)`, `zeta(±s1,…)`, `beta(k)`, `Lik(1/2)`,
/// `Re|ImLi_{s1,…}(z1,…)` at fourth roots of unity, `Re|ImLik((1+i)/2)`,
/// and products of these with powers such as `pi^2*log2`.
pub fn constant(name: &str, digits: u32) -> Result<HPReal, CatalogError> {
    let key = canonical_name(name);
    let prec = bits_for_digits(digits);
    if let Some((d, v)) = cache().read().expect("catalog cache poisoned").get(&key) {
        if *d >= digits {
            let mut v = v.clone();
            v.value.set_prec(prec);
            return Ok(v);
        }
    }
    let v = eval_name(&key, digits + GUARD)?;
    let mut w = cache().write().expect("catalog cache poisoned");
    let slot = w.entry(key).or_insert_with(|| (0, v.clone()));
    if slot.0 < digits {
        *slot = (digits, v.clone());
    }
    let mut v = v;
    v.value.set_prec(prec);
    Ok(v)
}

/// Evaluates without consulting or filling the cache.
pub fn constant_uncached(name: &str, digits: u32) -> Result<HPReal, CatalogError> {
    let mut v = eval_name(&canonical_name(name), digits + GUARD)?;
    v.value.set_prec(bits_for_digits(digits));
    Ok(v)
}
