//! Cached data for arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are polynomials in ζ reduced modulo the N-th cyclotomic
//! polynomial Φ_N, so the representation is a field and equality is
//! coefficient-wise.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::rational::BigRational;
use num::{One, Zero};
use once_cell::sync::Lazy;

use super::poly::{self, Poly, Rat};

pub struct CycloCtx {
    pub n: u64,
    /// deg Φ_N = φ(N)
    pub phi: usize,
    pub minpoly: Poly,
    /// ζ^k reduced mod Φ_N, for 0 ≤ k < N.
    pub zeta_pow: Vec<Poly>,
    /// x^j mod Φ_N for 0 ≤ j ≤ 2(φ(N)-1), used to fold products.
    xpow: Vec<Poly>,
}

static CTX_CACHE: Lazy<Mutex<HashMap<u64, Arc<CycloCtx>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn ctx(n: u64) -> Arc<CycloCtx> {
    assert!(n >= 1, "root-of-unity order must be positive");
    let mut cache = CTX_CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(CycloCtx::build(n)))
        .clone()
}

/// Φ_N via Φ_N(x) = (x^N - 1) / ∏_{d | N, d < N} Φ_d(x).
pub fn cyclotomic_poly(n: u64) -> Poly {
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    let mut num = poly::trim(num);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly::divrem(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

impl CycloCtx {
    fn build(n: u64) -> CycloCtx {
        let minpoly = cyclotomic_poly(n);
        let phi = poly::degree(&minpoly);
        // x^j mod Φ_N
        let mut xpow = Vec::with_capacity(2 * phi.max(1));
        let top = if phi == 0 { 1 } else { 2 * phi - 1 };
        for j in 0..=top {
            let (_, r) = poly::divrem(&poly::monomial(j), &minpoly);
            xpow.push(r);
        }
        let mut zeta_pow = Vec::with_capacity(n as usize);
        for k in 0..n as usize {
            if k <= top {
                zeta_pow.push(xpow[k].clone());
            } else {
                let (_, r) = poly::divrem(&poly::monomial(k), &minpoly);
                zeta_pow.push(r);
            }
        }
        CycloCtx {
            n,
            phi,
            minpoly,
            zeta_pow,
            xpow,
        }
    }

    /// Reduce an arbitrary polynomial mod Φ_N.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if p.len() <= self.phi {
            return p.clone();
        }
        if p.len() <= self.xpow.len() {
            let mut out = vec![Rat::zero(); self.phi.max(1)];
            for (j, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, b) in self.xpow[j].iter().enumerate() {
                    out[i] += c * b;
                }
            }
            return poly::trim(out);
        }
        let (_, r) = poly::divrem(p, &self.minpoly);
        r
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&poly::mul(a, b))
    }

    /// Multiplicative inverse mod Φ_N; the argument must be nonzero.
    pub fn inverse(&self, a: &Poly) -> Poly {
        assert!(!a.is_empty(), "inverse of zero in Q(zeta)");
        let (g, s, _) = poly::xgcd(a, &self.minpoly);
        assert!(
            g.len() == 1,
            "element shares a factor with the cyclotomic polynomial"
        );
        let c = &g[0];
        self.reduce(&s.iter().map(|x| x / c).collect::<Poly>())
    }

    /// ζ ↦ ζ^{-1} extended to the whole field.
    pub fn star(&self, a: &Poly) -> Poly {
        let n = self.n as usize;
        let mut out = vec![Rat::zero(); self.phi.max(1)];
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let inv = &self.zeta_pow[(n - k % n) % n];
            for (i, b) in inv.iter().enumerate() {
                out[i] += c * b;
            }
        }
        poly::trim(out)
    }

    /// Evaluate a rational polynomial at ζ_N.
    pub fn eval(&self, p: &Poly) -> Poly {
        let mut acc: Poly = vec![];
        for c in p.iter().rev() {
            acc = self.mul(&acc, &self.zeta_pow[1 % self.n as usize]);
            acc = poly::add(&acc, &poly::constant(c.clone()));
        }
        acc
    }
}

#[allow(unused)]
pub type Rational = BigRational;

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64) -> Rat {
        Rat::from(BigInt::from(n))
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), vec![r(-1), r(1)]);
        assert_eq!(cyclotomic_poly(2), vec![r(1), r(1)]);
        assert_eq!(cyclotomic_poly(4), vec![r(1), r(0), r(1)]);
        assert_eq!(cyclotomic_poly(8), vec![r(1), r(0), r(0), r(0), r(1)]);
        assert_eq!(cyclotomic_poly(3), vec![r(1), r(1), r(1)]);
        assert_eq!(
            cyclotomic_poly(12),
            vec![r(1), r(0), r(-1), r(0), r(1)]
        );
    }

    #[test]
    fn zeta_powers_cycle() {
        let c = ctx(8);
        for k in 0..8usize {
            let prod = c.mul(&c.zeta_pow[k], &c.zeta_pow[(8 - k) % 8]);
            assert_eq!(prod, vec![r(1)]);
        }
    }

    #[test]
    fn inverse_is_exact() {
        let c = ctx(8);
        // 1 + ζ is invertible in Q(ζ_8)
        let a = vec![r(1), r(1)];
        let inv = c.inverse(&a);
        assert_eq!(c.mul(&a, &inv), vec![r(1)]);
    }

    #[test]
    fn order_one_collapses() {
        let c = ctx(1);
        assert_eq!(c.phi, 1);
        assert_eq!(c.zeta_pow[0], vec![r(1)]);
    }
}
