//! Exact coefficient arithmetic for every computation in the crate.
//!
//! A [`Scalar`] is either an element of the cyclotomic field Q(ζ_N)
//! (`ZetaMode::RootOfUnity(N)`), stored as a rational polynomial in ζ
//! reduced modulo the N-th cyclotomic polynomial, or a rational function
//! in a formal unit-modulus variable ζ (`ZetaMode::Generic`), stored in
//! lowest terms with monic denominator. Both representations are
//! canonical, so equality is syntactic, and both are fields, so linear
//! solving is exact.
//!
//! The star operation implements ζ ↦ ζ^{-1} and fixes rationals.

mod cyclotomic;
mod poly;
pub mod solve;

use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use poly::Poly;

pub use poly::Rat;

/// Where ζ lives: a primitive N-th root of unity, or a formal variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ZetaMode {
    RootOfUnity(u64),
    Generic,
}

impl ZetaMode {
    pub fn root(n: u64) -> ZetaMode {
        assert!(n >= 1, "root-of-unity order must be at least 1");
        ZetaMode::RootOfUnity(n)
    }
}

impl fmt::Display for ZetaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaMode::RootOfUnity(n) => write!(f, "root {n}"),
            ZetaMode::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Element of Q(ζ_N): polynomial of degree < φ(N), no trailing zeros.
    Cyclo { n: u64, coeffs: Poly },
    /// num/den in lowest terms, den monic and nonzero.
    Rat { num: Poly, den: Poly },
}

/// An exact element of the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(mode: ZetaMode) -> Scalar {
        match mode {
            ZetaMode::RootOfUnity(n) => Scalar(Repr::Cyclo { n, coeffs: vec![] }),
            ZetaMode::Generic => Scalar(Repr::Rat {
                num: vec![],
                den: poly::one(),
            }),
        }
    }

    pub fn one(mode: ZetaMode) -> Scalar {
        Scalar::from_rational(Rat::one(), mode)
    }

    pub fn from_rational(q: Rat, mode: ZetaMode) -> Scalar {
        match mode {
            ZetaMode::RootOfUnity(n) => Scalar(Repr::Cyclo {
                n,
                coeffs: poly::constant(q),
            }),
            ZetaMode::Generic => Scalar(Repr::Rat {
                num: poly::constant(q),
                den: poly::one(),
            }),
        }
    }

    pub fn from_int(k: i64, mode: ZetaMode) -> Scalar {
        Scalar::from_rational(Rat::from(BigInt::from(k)), mode)
    }

    /// ζ^exponent in canonical form; reduced mod N in root-of-unity mode.
    pub fn phase(exponent: i64, mode: ZetaMode) -> Scalar {
        match mode {
            ZetaMode::RootOfUnity(n) => {
                let k = exponent.rem_euclid(n as i64) as usize;
                let ctx = cyclotomic::ctx(n);
                Scalar(Repr::Cyclo {
                    n,
                    coeffs: ctx.zeta_pow[k].clone(),
                })
            }
            ZetaMode::Generic => {
                if exponent >= 0 {
                    Scalar(Repr::Rat {
                        num: poly::monomial(exponent as usize),
                        den: poly::one(),
                    })
                } else {
                    Scalar(Repr::Rat {
                        num: poly::one(),
                        den: poly::monomial((-exponent) as usize),
                    })
                }
            }
        }
    }

    /// The R-matrix value R(l, m) = ζ^{-l·m}.
    pub fn r_matrix(l: i64, m: i64, mode: ZetaMode) -> Scalar {
        Scalar::phase(-(l * m), mode)
    }

    pub fn mode(&self) -> ZetaMode {
        match &self.0 {
            Repr::Cyclo { n, .. } => ZetaMode::RootOfUnity(*n),
            Repr::Rat { .. } => ZetaMode::Generic,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Cyclo { coeffs, .. } => coeffs.is_empty(),
            Repr::Rat { num, .. } => num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Cyclo { coeffs, .. } => coeffs.len() == 1 && coeffs[0].is_one(),
            Repr::Rat { num, den } => num.len() == 1 && num[0].is_one() && poly::is_zero(&poly::sub(den, &poly::one())),
        }
    }

    /// Some(q) when the scalar is the rational constant q.
    pub fn as_rational(&self) -> Option<Rat> {
        match &self.0 {
            Repr::Cyclo { coeffs, .. } => match coeffs.len() {
                0 => Some(Rat::zero()),
                1 => Some(coeffs[0].clone()),
                _ => None,
            },
            Repr::Rat { num, den } => {
                if den.len() != 1 || !den[0].is_one() || num.len() > 1 {
                    return None;
                }
                Some(num.first().cloned().unwrap_or_else(Rat::zero))
            }
        }
    }

    fn same_mode(&self, other: &Scalar) -> ZetaMode {
        let m = self.mode();
        assert_eq!(m, other.mode(), "scalar mode mismatch");
        m
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.same_mode(other);
        match (&self.0, &other.0) {
            (Repr::Cyclo { n, coeffs: a }, Repr::Cyclo { coeffs: b, .. }) => Scalar(Repr::Cyclo {
                n: *n,
                coeffs: poly::add(a, b),
            }),
            (Repr::Rat { num: a, den: b }, Repr::Rat { num: c, den: d }) => {
                let num = poly::add(&poly::mul(a, d), &poly::mul(c, b));
                let den = poly::mul(b, d);
                Scalar(normalize_rat(num, den))
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Cyclo { n, coeffs } => Scalar(Repr::Cyclo {
                n: *n,
                coeffs: poly::neg(coeffs),
            }),
            Repr::Rat { num, den } => Scalar(Repr::Rat {
                num: poly::neg(num),
                den: den.clone(),
            }),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.same_mode(other);
        match (&self.0, &other.0) {
            (Repr::Cyclo { n, coeffs: a }, Repr::Cyclo { coeffs: b, .. }) => {
                let ctx = cyclotomic::ctx(*n);
                Scalar(Repr::Cyclo {
                    n: *n,
                    coeffs: ctx.mul(a, b),
                })
            }
            (Repr::Rat { num: a, den: b }, Repr::Rat { num: c, den: d }) => {
                let num = poly::mul(a, c);
                let den = poly::mul(b, d);
                Scalar(normalize_rat(num, den))
            }
            _ => unreachable!(),
        }
    }

    /// Exact multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        match &self.0 {
            Repr::Cyclo { n, coeffs } => {
                let ctx = cyclotomic::ctx(*n);
                Scalar(Repr::Cyclo {
                    n: *n,
                    coeffs: ctx.inverse(coeffs),
                })
            }
            Repr::Rat { num, den } => Scalar(normalize_rat(den.clone(), num.clone())),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// The conjugation ζ ↦ ζ^{-1}; an involutive field automorphism
    /// fixing the rationals.
    pub fn star(&self) -> Scalar {
        match &self.0 {
            Repr::Cyclo { n, coeffs } => {
                let ctx = cyclotomic::ctx(*n);
                Scalar(Repr::Cyclo {
                    n: *n,
                    coeffs: ctx.star(coeffs),
                })
            }
            Repr::Rat { num, den } => {
                if num.is_empty() {
                    return self.clone();
                }
                let dn = poly::degree(num);
                let dd = poly::degree(den);
                let rn = poly::reverse(num);
                let rd = poly::reverse(den);
                let (num, den) = if dd >= dn {
                    (poly::mul(&rn, &poly::monomial(dd - dn)), rd)
                } else {
                    (rn, poly::mul(&rd, &poly::monomial(dn - dd)))
                };
                Scalar(normalize_rat(num, den))
            }
        }
    }

    /// Evaluate a Generic-mode scalar at ζ = ζ_N. Fails if the
    /// denominator vanishes there.
    pub fn specialize(&self, n: u64) -> Result<Scalar, Error> {
        match &self.0 {
            Repr::Cyclo { n: m, .. } => {
                if *m == n {
                    Ok(self.clone())
                } else {
                    Err(Error::ModeMismatch {
                        expected: ZetaMode::RootOfUnity(n),
                        found: self.mode(),
                    })
                }
            }
            Repr::Rat { num, den } => {
                let ctx = cyclotomic::ctx(n);
                let d = ctx.eval(den);
                if d.is_empty() {
                    return Err(Error::SpecializationPole { order: n });
                }
                let nm = ctx.eval(num);
                let inv = ctx.inverse(&d);
                Ok(Scalar(Repr::Cyclo {
                    n,
                    coeffs: ctx.mul(&nm, &inv),
                }))
            }
        }
    }

    /// Cheap size measure used for pivot selection: number of nonzero
    /// polynomial coefficients in the representation.
    pub fn complexity(&self) -> usize {
        match &self.0 {
            Repr::Cyclo { coeffs, .. } => coeffs.iter().filter(|c| !c.is_zero()).count(),
            Repr::Rat { num, den } => {
                num.iter().filter(|c| !c.is_zero()).count()
                    + den.iter().filter(|c| !c.is_zero()).count()
            }
        }
    }

    /// True when the scalar is q·ζ^k for a rational q (these specialize
    /// to every root of unity without poles).
    pub fn is_monomial(&self) -> bool {
        match &self.0 {
            Repr::Cyclo { .. } => true,
            Repr::Rat { num, den } => {
                num.iter().filter(|c| !c.is_zero()).count() <= 1
                    && den.iter().filter(|c| !c.is_zero()).count() == 1
            }
        }
    }
}

fn normalize_rat(num: Poly, den: Poly) -> Repr {
    assert!(!den.is_empty(), "rational function with zero denominator");
    if num.is_empty() {
        return Repr::Rat {
            num: vec![],
            den: poly::one(),
        };
    }
    // Strip the common power of ζ first; it is by far the common case.
    let v = poly::valuation(&num).min(poly::valuation(&den));
    let (num, den) = if v > 0 {
        (poly::shift_down(&num, v), poly::shift_down(&den, v))
    } else {
        (num, den)
    };
    let g = poly::gcd(&num, &den);
    let (num, den) = if g.len() > 1 {
        (poly::divrem(&num, &g).0, poly::divrem(&den, &g).0)
    } else {
        (num, den)
    };
    let lead = den.last().unwrap().clone();
    if lead.is_one() {
        Repr::Rat { num, den }
    } else {
        Repr::Rat {
            num: num.iter().map(|c| c / &lead).collect(),
            den: den.iter().map(|c| c / &lead).collect(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Cyclo { coeffs, .. } => write!(f, "{}", poly::fmt_poly(coeffs, "zeta")),
            Repr::Rat { num, den } => {
                if den.len() == 1 && den[0].is_one() {
                    write!(f, "{}", poly::fmt_poly(num, "zeta"))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        poly::fmt_poly(num, "zeta"),
                        poly::fmt_poly(den, "zeta")
                    )
                }
            }
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Nonnegativity test for rational constants (used by functional
/// positivity checks).
pub fn rational_is_nonnegative(q: &Rat) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: ZetaMode = ZetaMode::Generic;

    #[test]
    fn phase_identity_and_reduction() {
        for mode in [G, ZetaMode::root(4), ZetaMode::root(8), ZetaMode::root(1)] {
            assert!(Scalar::phase(0, mode).is_one());
        }
        assert_eq!(Scalar::phase(5, ZetaMode::root(4)), Scalar::phase(1, ZetaMode::root(4)));
        // zeta* = zeta^{-1}
        assert_eq!(Scalar::phase(-6, G).star(), Scalar::phase(6, G));
    }

    #[test]
    fn r_matrix_values() {
        for m in -3..=3 {
            assert!(Scalar::r_matrix(0, m, G).is_one());
        }
        assert_eq!(Scalar::r_matrix(2, 3, G), Scalar::phase(-6, G));
        assert_eq!(
            Scalar::r_matrix(2, 3, ZetaMode::root(4)),
            Scalar::phase(2, ZetaMode::root(4))
        );
    }

    #[test]
    fn phases_cancel() {
        for mode in [G, ZetaMode::root(8), ZetaMode::root(3), ZetaMode::root(1)] {
            for k in -5..=5 {
                let p = Scalar::phase(k, mode).mul(&Scalar::phase(-k, mode));
                assert!(p.is_one(), "phase({k})*phase({}) != 1 in {mode}", -k);
            }
        }
    }

    #[test]
    fn root_of_unity_one_is_classical() {
        let mode = ZetaMode::root(1);
        for k in -4..=4 {
            assert!(Scalar::phase(k, mode).is_one());
        }
    }

    #[test]
    fn star_is_ring_automorphism() {
        let mode = ZetaMode::root(8);
        let a = Scalar::phase(3, mode).add(&Scalar::from_int(2, mode));
        let b = Scalar::phase(-1, mode).sub(&Scalar::from_int(5, mode));
        assert_eq!(a.mul(&b).star(), a.star().mul(&b.star()));
        assert_eq!(a.star().star(), a);

        let a = Scalar::phase(2, G).add(&Scalar::from_int(7, G));
        let b = Scalar::phase(-3, G).add(&Scalar::phase(1, G));
        assert_eq!(a.mul(&b).star(), a.star().mul(&b.star()));
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn generic_division_is_exact() {
        let a = Scalar::phase(2, G).add(&Scalar::one(G));
        let b = Scalar::phase(-1, G).add(&Scalar::from_int(3, G));
        let q = a.div(&b);
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn field_division_in_cyclotomic_mode() {
        let mode = ZetaMode::root(8);
        let x = Scalar::phase(2, mode).div(&Scalar::phase(1, mode));
        assert_eq!(x, Scalar::phase(1, mode));
    }

    #[test]
    fn specialization_of_monomials() {
        let s = Scalar::phase(-6, G);
        assert_eq!(s.specialize(4).unwrap(), Scalar::phase(2, ZetaMode::root(4)));
        let sum = Scalar::phase(1, G).add(&Scalar::one(G));
        // 1 + ζ at ζ_4 = 1 + i, fine
        assert!(sum.specialize(4).is_ok());
        // 1/(1 + ζ^2) has a pole at ζ_4
        let pole = Scalar::one(G).div(&Scalar::phase(2, G).add(&Scalar::one(G)));
        assert!(pole.specialize(4).is_err());
        assert!(pole.specialize(8).is_ok());
    }

    #[test]
    fn display_is_canonical() {
        let s = Scalar::phase(2, G).add(&Scalar::from_int(-1, G));
        assert_eq!(s.to_string(), "-1 + zeta^2");
        let t = Scalar::phase(-1, G);
        assert_eq!(t.to_string(), "(1)/(zeta)");
    }
}
