//! Dense helpers for polynomials with rational coefficients, stored
//! lowest degree first. Everything here keeps vectors trimmed.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x + y);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = Rational::one() / &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = &rem[rem.len() - 1] * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    divrem(a, b).1
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s*a = g (mod m)`.
pub(crate) fn ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(l) = r0.last().cloned() {
        let inv = Rational::one() / l;
        r0 = scale(&r0, &inv);
        s0 = scale(&s0, &inv);
    }
    (r0, s0)
}

pub(crate) fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn fmt_poly(p: &[Rational], var: &str) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &Rational::zero();
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}
