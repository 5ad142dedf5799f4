//! Finite-dimensional Z-graded *-algebras D = ⊕_x M_{n_x}(C).
//!
//! A [`GradingSpec`] lists the block sizes and an integer degree for each
//! basis vector of each block. Matrix units multiply by
//! E_{ij,x}·E_{kl,y} = δ_{j,k}δ_{x,y}·E_{il,x}, star transposes, and the
//! circle action scales E_{ij,x} by z^{d_i - d_j}. The distinguished
//! functional is either the normalized trace per block (matrix case) or
//! the unnormalized δ_{i,j} functional (direct-sum case).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::scalars::{Rat, Scalar, ZetaMode};

/// Basis index of a matrix unit: row, column (0-based) and block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitIndex {
    pub i: usize,
    pub j: usize,
    pub block: usize,
}

/// Block sizes together with a nondecreasing degree sequence per block.
///
/// Input degree lists may arrive unordered; they are sorted on
/// construction and the applied permutation is recorded per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingSpec {
    blocks: Vec<usize>,
    degrees: Vec<Vec<i64>>,
    sort_permutations: Vec<Vec<usize>>,
}

impl GradingSpec {
    pub fn new(blocks: &[(usize, Vec<i64>)]) -> Result<GradingSpec, Error> {
        if blocks.is_empty() {
            return Err(Error::EmptySpec);
        }
        let mut sizes = Vec::new();
        let mut degrees = Vec::new();
        let mut perms = Vec::new();
        for (x, (size, degs)) in blocks.iter().enumerate() {
            if *size == 0 {
                return Err(Error::Invalid(format!("block {} has size zero", x + 1)));
            }
            if degs.len() != *size {
                return Err(Error::DegreeCountMismatch {
                    block: x + 1,
                    got: degs.len(),
                    want: *size,
                });
            }
            if *size == 1 && degs[0] != 0 {
                return Err(Error::CommutativeGrading {
                    block: x + 1,
                    degree: degs[0],
                });
            }
            let mut perm: Vec<usize> = (0..*size).collect();
            perm.sort_by_key(|&k| (degs[k], k));
            let sorted: Vec<i64> = perm.iter().map(|&k| degs[k]).collect();
            sizes.push(*size);
            degrees.push(sorted);
            perms.push(perm);
        }
        Ok(GradingSpec {
            blocks: sizes,
            degrees,
            sort_permutations: perms,
        })
    }

    /// Single block of size n with the given degrees.
    pub fn single(degrees: &[i64]) -> Result<GradingSpec, Error> {
        GradingSpec::new(&[(degrees.len(), degrees.to_vec())])
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.blocks
    }

    pub fn degree(&self, x: usize, i: usize) -> i64 {
        self.degrees[x][i]
    }

    pub fn degrees(&self, x: usize) -> &[i64] {
        &self.degrees[x]
    }

    /// Permutation applied to put the input degree list of block `x`
    /// into nondecreasing order.
    pub fn sort_permutation(&self, x: usize) -> &[usize] {
        &self.sort_permutations[x]
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }

    /// deg E_{ij,x} = d^x_i - d^x_j.
    pub fn unit_degree(&self, u: UnitIndex) -> i64 {
        self.degree(u.block, u.i) - self.degree(u.block, u.j)
    }

    pub fn units(&self) -> impl Iterator<Item = UnitIndex> + '_ {
        self.blocks.iter().enumerate().flat_map(|(x, &n)| {
            (0..n).flat_map(move |i| (0..n).map(move |j| UnitIndex { i, j, block: x }))
        })
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }

    /// True when every degree is zero, i.e. the circle action is trivial.
    pub fn trivially_graded(&self) -> bool {
        self.degrees.iter().flatten().all(|&d| d == 0)
    }
}

impl fmt::Display for GradingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| {
                let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                format!("block {} degrees {}", n, ds.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Choice of distinguished functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionalChoice {
    /// φ(E_{ij,x}) = δ_{i,j}/n_x (single matrix block convention).
    NormalizedTrace,
    /// φ(E_{ij,x}) = δ_{i,j} (direct-sum convention; φ(1) = Σ n_x).
    BlockDelta,
}

/// The concrete graded *-algebra over a fixed scalar mode.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    spec: GradingSpec,
    mode: ZetaMode,
    functional: FunctionalChoice,
    id: usize,
}

static ALGEBRA_IDS: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);

/// Sparse element: basis index → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    parent: usize,
    terms: BTreeMap<UnitIndex, Scalar>,
}

pub fn make_matrix_algebra(
    spec: GradingSpec,
    functional: FunctionalChoice,
    mode: ZetaMode,
) -> Arc<GradedAlgebra> {
    Arc::new(GradedAlgebra {
        spec,
        mode,
        functional,
        id: ALGEBRA_IDS.fetch_add(1, std::sync::atomic::Ordering::Relaxed),
    })
}

impl GradedAlgebra {
    pub fn spec(&self) -> &GradingSpec {
        &self.spec
    }

    pub fn mode(&self) -> ZetaMode {
        self.mode
    }

    pub fn functional_choice(&self) -> FunctionalChoice {
        self.functional
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            parent: self.id,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit_element(&self, u: UnitIndex) -> AlgebraElement {
        self.from_terms([(u, Scalar::one(self.mode))])
    }

    pub fn one(&self) -> AlgebraElement {
        let mode = self.mode;
        self.from_terms(self.spec.units().filter(|u| u.i == u.j).map(|u| (u, Scalar::one(mode))))
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (UnitIndex, Scalar)>,
    ) -> AlgebraElement {
        let mut map = BTreeMap::new();
        for (u, c) in terms {
            debug_assert!(u.block < self.spec.num_blocks());
            debug_assert!(u.i < self.spec.block_size(u.block));
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(u).or_insert_with(|| Scalar::zero(self.mode));
            *entry = entry.add(&c);
            if entry.is_zero() {
                map.remove(&u);
            }
        }
        AlgebraElement {
            parent: self.id,
            terms: map,
        }
    }

    fn check_parent(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<(), Error> {
        if a.parent != self.id || b.parent != self.id {
            return Err(Error::MixedParents);
        }
        Ok(())
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_parent(a, b)?;
        Ok(self.from_terms(
            a.terms
                .iter()
                .chain(b.terms.iter())
                .map(|(u, c)| (*u, c.clone())),
        ))
    }

    pub fn scale(&self, c: &Scalar, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            parent: a.parent,
            terms: if c.is_zero() {
                BTreeMap::new()
            } else {
                a.terms.iter().map(|(u, v)| (*u, c.mul(v))).collect()
            },
        }
    }

    /// Bilinear extension of E_{ij,x}E_{kl,y} = δ_{j,k}δ_{x,y}E_{il,x}.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_parent(a, b)?;
        let mut out: BTreeMap<UnitIndex, Scalar> = BTreeMap::new();
        for (ua, ca) in &a.terms {
            for (ub, cb) in &b.terms {
                if ua.j != ub.i || ua.block != ub.block {
                    continue;
                }
                let target = UnitIndex {
                    i: ua.i,
                    j: ub.j,
                    block: ua.block,
                };
                let c = ca.mul(cb);
                let entry = out.entry(target).or_insert_with(|| Scalar::zero(self.mode));
                *entry = entry.add(&c);
                if entry.is_zero() {
                    out.remove(&target);
                }
            }
        }
        Ok(AlgebraElement {
            parent: self.id,
            terms: out,
        })
    }

    /// E_{ij,x}* = E_{ji,x}, with scalar conjugation.
    pub fn star(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            parent: a.parent,
            terms: a
                .terms
                .iter()
                .map(|(u, c)| {
                    (
                        UnitIndex {
                            i: u.j,
                            j: u.i,
                            block: u.block,
                        },
                        c.star(),
                    )
                })
                .collect(),
        }
    }

    /// Π at z = ζ^{z_exponent}: scales each homogeneous component by
    /// phase(z_exponent · deg).
    pub fn apply_action(&self, z_exponent: i64, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            parent: a.parent,
            terms: a
                .terms
                .iter()
                .map(|(u, c)| {
                    let deg = self.spec.unit_degree(*u);
                    (*u, c.mul(&Scalar::phase(z_exponent * deg, self.mode)))
                })
                .collect(),
        }
    }

    pub fn apply_functional(&self, a: &AlgebraElement) -> Scalar {
        let mut acc = Scalar::zero(self.mode);
        for (u, c) in &a.terms {
            if u.i != u.j {
                continue;
            }
            let weight = match self.functional {
                FunctionalChoice::NormalizedTrace => Scalar::from_rational(
                    Rat::new(1.into(), (self.spec.block_size(u.block) as i64).into()),
                    self.mode,
                ),
                FunctionalChoice::BlockDelta => Scalar::one(self.mode),
            };
            acc = acc.add(&c.mul(&weight));
        }
        acc
    }
}

impl AlgebraElement {
    pub fn terms(&self) -> impl Iterator<Item = (&UnitIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, u: UnitIndex) -> Option<&Scalar> {
        self.terms.get(&u)
    }

    /// Total degree when the element is homogeneous.
    pub fn homogeneous_degree(&self, spec: &GradingSpec) -> Option<i64> {
        let mut deg = None;
        for (u, _) in &self.terms {
            let d = spec.unit_degree(*u);
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return None,
            }
        }
        deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: ZetaMode = ZetaMode::Generic;

    fn m2() -> Arc<GradedAlgebra> {
        make_matrix_algebra(
            GradingSpec::single(&[0, 1]).unwrap(),
            FunctionalChoice::NormalizedTrace,
            G,
        )
    }

    fn u(i: usize, j: usize) -> UnitIndex {
        UnitIndex { i, j, block: 0 }
    }

    #[test]
    fn functional_on_units() {
        let alg = m2();
        let half = Scalar::from_rational(Rat::new(1.into(), 2.into()), G);
        assert_eq!(alg.apply_functional(&alg.unit_element(u(0, 0))), half);
        assert!(alg.apply_functional(&alg.unit_element(u(0, 1))).is_zero());
    }

    #[test]
    fn unit_degrees() {
        let alg = m2();
        assert_eq!(alg.spec().unit_degree(u(0, 1)), -1);
        assert_eq!(alg.spec().unit_degree(u(1, 0)), 1);
    }

    #[test]
    fn delta_collapse_and_star() {
        let alg = m2();
        let e12 = alg.unit_element(u(0, 1));
        let e21 = alg.unit_element(u(1, 0));
        assert_eq!(alg.multiply(&e12, &e21).unwrap(), alg.unit_element(u(0, 0)));
        assert!(alg.multiply(&e12, &e12).unwrap().is_zero());
        assert_eq!(alg.star(&e12), e21);
    }

    #[test]
    fn action_scales_by_degree_phase() {
        let alg = m2();
        let e21 = alg.unit_element(u(1, 0));
        let acted = alg.apply_action(1, &e21);
        assert_eq!(acted, alg.scale(&Scalar::phase(1, G), &e21));
    }

    #[test]
    fn commutative_blocks_need_zero_degree() {
        assert!(GradingSpec::new(&[(1, vec![0]), (1, vec![0])]).is_ok());
        let err = GradingSpec::new(&[(1, vec![2])]).unwrap_err();
        assert!(matches!(err, Error::CommutativeGrading { .. }));
    }

    #[test]
    fn unordered_degrees_are_sorted_with_permutation() {
        let spec = GradingSpec::single(&[1, 0, 1]).unwrap();
        assert_eq!(spec.degrees(0), &[0, 1, 1]);
        assert_eq!(spec.sort_permutation(0), &[1, 0, 2]);
    }

    #[test]
    fn functional_is_action_invariant() {
        let alg = m2();
        for idx in [u(0, 0), u(0, 1), u(1, 0), u(1, 1)] {
            let e = alg.unit_element(idx);
            for z in -2..=2 {
                assert_eq!(
                    alg.apply_functional(&alg.apply_action(z, &e)),
                    alg.apply_functional(&e)
                );
            }
        }
    }
}
