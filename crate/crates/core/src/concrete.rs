//! Hilbert-space-level braided tensor products of graded matrix algebras.
//!
//! Each graded algebra is represented faithfully on its column space,
//! with basis vector degrees taken from the grading. The braiding
//! unitary on a pair of graded spaces permutes tensor factors with the
//! phase ζ^{l¹_m·l²_n}; the second embedding of the braided product is
//! the conjugation of `b ⊗ 1` by that unitary. Everything is an exact
//! sparse matrix over [`Scalar`], so the commutation phase law can be
//! checked by literal matrix multiplication.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::graded::{GradedAlgebra, UnitIndex};
use crate::scalars::{Scalar, ZetaMode};

/// A finite-dimensional space with a circle action diagonal on the
/// chosen basis; one integer eigenvalue per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    pub degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i64>) -> GradedSpace {
        assert!(!degrees.is_empty(), "graded space must have dimension >= 1");
        GradedSpace { degrees }
    }

    pub fn dimension(&self) -> usize {
        self.degrees.len()
    }

    /// Tensor product space, basis ordered lexicographically; degrees add.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut degrees = Vec::with_capacity(self.dimension() * other.dimension());
        for &a in &self.degrees {
            for &b in &other.degrees {
                degrees.push(a + b);
            }
        }
        GradedSpace::new(degrees)
    }

    /// Column space of a graded algebra: one basis vector per row index
    /// of each block, carrying that row's degree.
    pub fn column_space(alg: &GradedAlgebra) -> GradedSpace {
        let spec = alg.spec();
        let mut degrees = Vec::new();
        for x in 0..spec.num_blocks() {
            degrees.extend_from_slice(spec.degrees(x));
        }
        GradedSpace::new(degrees)
    }
}

/// Exact sparse matrix over the scalar field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub mode: ZetaMode,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, mode: ZetaMode) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            mode,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize, mode: ZetaMode) -> SparseMatrix {
        let mut m = SparseMatrix::zero(dim, dim, mode);
        for i in 0..dim {
            m.set(i, i, Scalar::one(mode));
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols, self.mode);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            mode: self.mode,
            entries: self.entries.iter().map(|(k, v)| (*k, c.mul(v))).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            let cur = out.entries.remove(&(*r, *c));
            let sum = match cur {
                Some(x) => x.add(v),
                None => v.clone(),
            };
            if !sum.is_zero() {
                out.entries.insert((*r, *c), sum);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, Error> {
        self.add(&other.scale(&Scalar::from_int(-1, self.mode)))
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = SparseMatrix::zero(self.rows, other.cols, self.mode);
        for ((r, k), a) in &self.entries {
            let Some(row) = by_row.get(k) else { continue };
            for (c, b) in row {
                let prod = a.mul(b);
                let cur = out.entries.remove(&(*r, *c));
                let sum = match cur {
                    Some(x) => x.add(&prod),
                    None => prod,
                };
                if !sum.is_zero() {
                    out.entries.insert((*r, *c), sum);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with lexicographic basis ordering.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zero(
            self.rows * other.rows,
            self.cols * other.cols,
            self.mode,
        );
        for ((r1, c1), a) in &self.entries {
            for ((r2, c2), b) in &other.entries {
                out.entries.insert(
                    (r1 * other.rows + r2, c1 * other.cols + c2),
                    a.mul(b),
                );
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            mode: self.mode,
            entries: self
                .entries
                .iter()
                .map(|((r, c), v)| ((*c, *r), v.star()))
                .collect(),
        }
    }
}

/// The braiding Ψ: L₁⊗L₂ → L₂⊗L₁ for the R-matrix ζ^{-lm}, together
/// with its exact inverse.
#[derive(Clone, Debug)]
pub struct BraidingUnitary {
    pub forward: SparseMatrix,
    pub inverse: SparseMatrix,
}

/// Ψ(λ¹_m ⊗ λ²_n) = ζ^{l¹_m·l²_n}(λ²_n ⊗ λ¹_m) and its inverse.
pub fn braiding(l1: &GradedSpace, l2: &GradedSpace, mode: ZetaMode) -> BraidingUnitary {
    let (d1, d2) = (l1.dimension(), l2.dimension());
    let mut forward = SparseMatrix::zero(d2 * d1, d1 * d2, mode);
    let mut inverse = SparseMatrix::zero(d1 * d2, d2 * d1, mode);
    for m in 0..d1 {
        for n in 0..d2 {
            let e = l1.degrees[m] * l2.degrees[n];
            forward.set(n * d1 + m, m * d2 + n, Scalar::phase(e, mode));
            inverse.set(m * d2 + n, n * d1 + m, Scalar::phase(-e, mode));
        }
    }
    BraidingUnitary { forward, inverse }
}

/// The concrete braided tensor product D₁ ⊠_ζ D₂ acting on L₁⊗L₂.
pub struct BraidedTensorAlgebra {
    pub d1: Arc<GradedAlgebra>,
    pub d2: Arc<GradedAlgebra>,
    pub l1: GradedSpace,
    pub l2: GradedSpace,
    pub mode: ZetaMode,
    /// Braiding of the pair (L₂, L₁); j₂ is conjugation by it.
    psi21: BraidingUnitary,
}

/// Matrix of a single matrix unit on the column space of its algebra.
pub fn unit_matrix(alg: &GradedAlgebra, u: UnitIndex, mode: ZetaMode) -> SparseMatrix {
    let spec = alg.spec();
    let dim: usize = spec.block_sizes().iter().sum();
    let offset: usize = spec.block_sizes()[..u.block].iter().sum();
    let mut m = SparseMatrix::zero(dim, dim, mode);
    m.set(offset + u.i, offset + u.j, Scalar::one(mode));
    m
}

pub fn braided_product(
    d1: Arc<GradedAlgebra>,
    d2: Arc<GradedAlgebra>,
    mode: ZetaMode,
) -> BraidedTensorAlgebra {
    let l1 = GradedSpace::column_space(&d1);
    let l2 = GradedSpace::column_space(&d2);
    let psi21 = braiding(&l2, &l1, mode);
    BraidedTensorAlgebra {
        d1,
        d2,
        l1,
        l2,
        mode,
        psi21,
    }
}

impl BraidedTensorAlgebra {
    pub fn carrier_dimension(&self) -> usize {
        self.l1.dimension() * self.l2.dimension()
    }

    /// j₁(d₁) = d₁ ⊗ 1.
    pub fn j1_unit(&self, u: UnitIndex) -> SparseMatrix {
        unit_matrix(&self.d1, u, self.mode)
            .kron(&SparseMatrix::identity(self.l2.dimension(), self.mode))
    }

    /// j₂(d₂) = Ψ_{L₂,L₁} (d₂ ⊗ 1) Ψ̌_{L₁,L₂}, as an exact matrix.
    pub fn j2_unit(&self, u: UnitIndex) -> SparseMatrix {
        let inner = unit_matrix(&self.d2, u, self.mode)
            .kron(&SparseMatrix::identity(self.l1.dimension(), self.mode));
        self.psi21
            .forward
            .mul(&inner)
            .and_then(|m| m.mul(&self.psi21.inverse))
            .expect("braiding shapes")
    }

    /// The product basis element j₁(E_a)·j₂(E_b); always a single matrix
    /// entry, which makes decomposition in this basis immediate.
    pub fn basis_product(&self, a: UnitIndex, b: UnitIndex) -> SparseMatrix {
        self.j1_unit(a).mul(&self.j2_unit(b)).expect("carrier shapes")
    }

    /// Decompose a carrier matrix over the basis {j₁(E_a)j₂(E_b)}.
    /// Returns None when the matrix has support outside the carrier.
    pub fn decompose(
        &self,
        m: &SparseMatrix,
    ) -> Option<BTreeMap<(UnitIndex, UnitIndex), Scalar>> {
        let mut out = BTreeMap::new();
        for ((r, c), v) in m.entries() {
            let d2 = self.l2.dimension();
            let (p, q) = (r / d2, r % d2);
            let (s, t) = (c / d2, c % d2);
            let a = self.global_to_unit(&self.d1, p, s)?;
            let b = self.global_to_unit(&self.d2, q, t)?;
            let base = self.basis_product(a, b);
            let coeff = base.get(*r, *c).expect("basis product support");
            out.insert((a, b), v.div(coeff));
        }
        Some(out)
    }

    fn global_to_unit(&self, alg: &GradedAlgebra, row: usize, col: usize) -> Option<UnitIndex> {
        let sizes = alg.spec().block_sizes();
        let mut offset = 0;
        for (x, &n) in sizes.iter().enumerate() {
            if row < offset + n {
                if col < offset || col >= offset + n {
                    return None; // crosses blocks: not a matrix unit
                }
                return Some(UnitIndex {
                    i: row - offset,
                    j: col - offset,
                    block: x,
                });
            }
            offset += n;
        }
        None
    }
}

/// Outcome of the exhaustive commutation phase sweep.
#[derive(Debug)]
pub struct CommutationReport {
    pub pairs_checked: usize,
    pub violations: Vec<(UnitIndex, UnitIndex)>,
}

/// Verify j₁(d₁)j₂(d₂) = ζ^{-deg(d₁)deg(d₂)} j₂(d₂)j₁(d₁) for every
/// pair of homogeneous basis elements.
pub fn check_commutation_phase(t: &BraidedTensorAlgebra) -> CommutationReport {
    let mut violations = Vec::new();
    let mut pairs = 0;
    for a in t.d1.spec().units() {
        let dega = t.d1.spec().unit_degree(a);
        let j1a = t.j1_unit(a);
        for b in t.d2.spec().units() {
            let degb = t.d2.spec().unit_degree(b);
            let j2b = t.j2_unit(b);
            pairs += 1;
            let lhs = j1a.mul(&j2b).expect("shapes");
            let rhs = j2b
                .mul(&j1a)
                .expect("shapes")
                .scale(&Scalar::phase(-dega * degb, t.mode));
            if lhs != rhs {
                violations.push((a, b));
            }
        }
    }
    CommutationReport {
        pairs_checked: pairs,
        violations,
    }
}

/// Embedding of factor `k` into the iterated braided product of all the
/// given spaces: conjugation of `m ⊗ 1` by the braiding that moves
/// factor k past the factors before it.
pub fn embed_factor(spaces: &[GradedSpace], k: usize, m: &SparseMatrix, mode: ZetaMode) -> SparseMatrix {
    assert!(k < spaces.len());
    // Combined space of the factors before k, the factor itself, after k.
    let before = spaces[..k]
        .iter()
        .cloned()
        .reduce(|a, b| a.tensor(&b));
    let after = spaces[k + 1..]
        .iter()
        .cloned()
        .reduce(|a, b| a.tensor(&b));
    let mut inner = m.clone();
    if let Some(ref before) = before {
        let psi = braiding(&spaces[k], before, mode);
        let sandwich = psi
            .forward
            .mul(&inner.kron(&SparseMatrix::identity(before.dimension(), mode)))
            .and_then(|x| x.mul(&psi.inverse))
            .expect("braiding shapes");
        inner = sandwich;
    }
    match after {
        Some(after) => inner.kron(&SparseMatrix::identity(after.dimension(), mode)),
        None => inner,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{make_matrix_algebra, FunctionalChoice, GradingSpec};

    const G: ZetaMode = ZetaMode::Generic;

    fn m2(mode: ZetaMode) -> Arc<GradedAlgebra> {
        make_matrix_algebra(
            GradingSpec::single(&[0, 1]).unwrap(),
            FunctionalChoice::NormalizedTrace,
            mode,
        )
    }

    #[test]
    fn zero_degrees_braid_is_plain_flip() {
        let a = GradedSpace::new(vec![0, 0]);
        let b = GradedSpace::new(vec![0, 0, 0]);
        let psi = braiding(&a, &b, G);
        for (_, v) in psi.forward.entries() {
            assert!(v.is_one());
        }
    }

    #[test]
    fn one_dim_braid_entry() {
        let a = GradedSpace::new(vec![1]);
        let b = GradedSpace::new(vec![1]);
        let psi = braiding(&a, &b, G);
        assert_eq!(psi.forward.get(0, 0), Some(&Scalar::phase(1, G)));
    }

    #[test]
    fn braiding_inverse_is_exact() {
        let space = GradedSpace::new(vec![0, 1, 2]);
        let mode = ZetaMode::root(8);
        let psi = braiding(&space, &space, mode);
        let id = SparseMatrix::identity(9, mode);
        assert_eq!(psi.inverse.mul(&psi.forward).unwrap(), id);
        assert_eq!(psi.forward.mul(&psi.inverse).unwrap(), id);
    }

    #[test]
    fn carrier_dimension_counts() {
        let t = braided_product(m2(G), m2(G), G);
        assert_eq!(t.carrier_dimension(), 4);
        // 16 basis products, each a single matrix entry
        for a in t.d1.spec().units() {
            for b in t.d2.spec().units() {
                assert_eq!(t.basis_product(a, b).entries().count(), 1);
            }
        }
    }

    #[test]
    fn commutation_phase_holds_on_m2_m2() {
        for mode in [G, ZetaMode::root(4)] {
            let t = braided_product(m2(mode), m2(mode), mode);
            let report = check_commutation_phase(&t);
            assert_eq!(report.pairs_checked, 16);
            assert!(report.violations.is_empty());
        }
    }

    #[test]
    fn zeta_one_gives_ordinary_tensor_product() {
        let mode = ZetaMode::root(1);
        let t = braided_product(m2(mode), m2(mode), mode);
        for b in t.d2.spec().units() {
            let plain = SparseMatrix::identity(2, mode).kron(&unit_matrix(&t.d2, b, mode));
            assert_eq!(t.j2_unit(b), plain);
        }
    }

    #[test]
    fn trivial_second_grading_gives_ordinary_tensor_product() {
        let d2 = make_matrix_algebra(
            GradingSpec::single(&[0, 0]).unwrap(),
            FunctionalChoice::NormalizedTrace,
            G,
        );
        let t = braided_product(m2(G), d2.clone(), G);
        for b in d2.spec().units() {
            let plain = SparseMatrix::identity(2, G).kron(&unit_matrix(&d2, b, G));
            assert_eq!(t.j2_unit(b), plain);
        }
    }

    #[test]
    fn embed_factor_matches_two_factor_product() {
        let mode = ZetaMode::root(8);
        let alg = m2(mode);
        let t = braided_product(alg.clone(), alg.clone(), mode);
        let spaces = [t.l1.clone(), t.l2.clone()];
        for u in alg.spec().units() {
            let m = unit_matrix(&alg, u, mode);
            assert_eq!(embed_factor(&spaces, 0, &m, mode), t.j1_unit(u));
            assert_eq!(embed_factor(&spaces, 1, &m, mode), t.j2_unit(u));
        }
    }
}
