//! Dense univariate polynomials over `Q`, little-endian coefficient vectors.
//!
//! Internal support for the cyclotomic and rational-function scalar
//! representations. The zero polynomial is the empty vector; canonical
//! polynomials never carry trailing zero coefficients.

use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// Coefficients in increasing degree, no trailing zeros.
pub type Poly = Vec<Rat>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero(p: &Poly) -> bool {
    p.is_empty()
}

pub fn constant(c: Rat) -> Poly {
    if c.is_zero() {
        vec![]
    } else {
        vec![c]
    }
}

pub fn one() -> Poly {
    vec![Rat::one()]
}

/// x^k
pub fn monomial(k: usize) -> Poly {
    let mut p = vec![Rat::zero(); k + 1];
    p[k] = Rat::one();
    p
}

pub fn degree(p: &Poly) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    add(a, &neg(b))
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

/// Euclidean division; the divisor must be nonzero.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut rem = a.clone();
    let mut quo = vec![Rat::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap() / &lead;
        quo[shift] = coef.clone();
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &coef * c;
        }
        rem = trim(rem);
    }
    (trim(quo), rem)
}

/// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(x)
}

pub fn make_monic(p: Poly) -> Poly {
    match p.last() {
        None => p,
        Some(lead) if lead.is_one() => p,
        Some(lead) => {
            let l = lead.clone();
            p.iter().map(|c| c / &l).collect()
        }
    }
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one(), vec![]);
    let (mut t0, mut t1) = (vec![], one());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let ns = sub(&s0, &mul(&q, &s1));
        let nt = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if let Some(lead) = r0.last().cloned() {
        if !lead.is_one() {
            r0 = r0.iter().map(|c| c / &lead).collect();
            s0 = s0.iter().map(|c| c / &lead).collect();
            t0 = t0.iter().map(|c| c / &lead).collect();
        }
    }
    (r0, s0, t0)
}

/// Reverse the coefficient order: p(x) of degree d becomes x^d·p(1/x).
pub fn reverse(p: &Poly) -> Poly {
    let mut r: Poly = p.iter().rev().cloned().collect();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Lowest nonzero degree, i.e. the multiplicity of the root x = 0.
pub fn valuation(p: &Poly) -> usize {
    p.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

pub fn shift_down(p: &Poly, k: usize) -> Poly {
    p[k..].to_vec()
}

pub fn fmt_poly(p: &Poly, var: &str) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coef = if mag.is_one() && k > 0 {
            String::new()
        } else if mag.is_integer() {
            format!("{}", mag.numer())
        } else {
            format!("({}/{})", mag.numer(), mag.denom())
        };
        let body = match (k, coef.is_empty()) {
            (0, _) => coef,
            (1, true) => var.to_string(),
            (1, false) => format!("{coef}*{var}"),
            (_, true) => format!("{var}^{k}"),
            (_, false) => format!("{coef}*{var}^{k}"),
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{body}")
            } else {
                body
            });
        } else if c.is_negative() {
            parts.push(format!(" - {body}"));
        } else {
            parts.push(format!(" + {body}"));
        }
    }
    parts.concat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64) -> Rat {
        Rat::from(BigInt::from(n))
    }

    #[test]
    fn divrem_roundtrip() {
        let a = trim(vec![r(2), r(0), r(1), r(3)]);
        let b = trim(vec![r(1), r(1)]);
        let (q, rem) = divrem(&a, &b);
        assert_eq!(add(&mul(&q, &b), &rem), a);
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = trim(vec![r(-1), r(1)]); // x - 1
        let a = mul(&f, &trim(vec![r(1), r(1)]));
        let b = mul(&f, &trim(vec![r(2), r(0), r(1)]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn xgcd_bezout() {
        let a = trim(vec![r(1), r(0), r(0), r(0), r(1)]); // x^4 + 1
        let b = trim(vec![r(3), r(1)]);
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
        assert_eq!(g, one());
    }
}
