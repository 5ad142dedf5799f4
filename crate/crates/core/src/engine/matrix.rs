//! Matrices with presented-algebra entries; used for the fundamental
//! matrix u = Σ E_{ik}⊗E_{jl}⊗u^{ij}_{kl} and its unitarity
//! certificates.

use rayon::prelude::*;

use crate::error::Error;
use crate::scalars::Scalar;

use super::certify::{CertifySetup, Outcome};
use super::{star, tensor_multiply, EngineCtx, TensorElement, Word};

/// Square matrix of single-slot tensor elements.
#[derive(Clone, Debug)]
pub struct MatrixOverAlgebra {
    pub dim: usize,
    entries: Vec<TensorElement>,
}

impl MatrixOverAlgebra {
    pub fn from_entries(dim: usize, entries: Vec<TensorElement>) -> MatrixOverAlgebra {
        assert_eq!(entries.len(), dim * dim);
        MatrixOverAlgebra { dim, entries }
    }

    pub fn entry(&self, r: usize, c: usize) -> &TensorElement {
        &self.entries[r * self.dim + c]
    }

    pub fn multiply(&self, ctx: &EngineCtx, other: &MatrixOverAlgebra) -> Result<MatrixOverAlgebra, Error> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let dim = self.dim;
        let entries: Vec<TensorElement> = (0..dim * dim)
            .into_par_iter()
            .map(|idx| {
                let (r, c) = (idx / dim, idx % dim);
                let mut acc = TensorElement::zero(1);
                for k in 0..dim {
                    let prod = tensor_multiply(ctx, self.entry(r, k), other.entry(k, c))
                        .expect("single-slot entries");
                    acc = acc.add(&prod).expect("single-slot entries");
                }
                acc
            })
            .collect();
        Ok(MatrixOverAlgebra { dim, entries })
    }

    /// Conjugate transpose: (M*)_{rc} = star(M_{cr}).
    pub fn adjoint(&self, ctx: &EngineCtx) -> MatrixOverAlgebra {
        let dim = self.dim;
        let entries: Vec<TensorElement> = (0..dim * dim)
            .map(|idx| {
                let (r, c) = (idx / dim, idx % dim);
                star(ctx, self.entry(c, r))
            })
            .collect();
        MatrixOverAlgebra { dim, entries }
    }

    /// Subtract the identity matrix.
    pub fn minus_identity(&self, ctx: &EngineCtx) -> MatrixOverAlgebra {
        let dim = self.dim;
        let one = TensorElement::monomial(vec![Word::identity()], Scalar::one(ctx.mode));
        let entries: Vec<TensorElement> = (0..dim * dim)
            .map(|idx| {
                let (r, c) = (idx / dim, idx % dim);
                if r == c {
                    self.entry(r, c).sub(&one).expect("single slot")
                } else {
                    self.entry(r, c).clone()
                }
            })
            .collect();
        MatrixOverAlgebra { dim, entries }
    }
}

/// Certify that every entry of `m - 1` vanishes in the quotient. One
/// outcome per matrix entry, row-major.
pub fn matrix_is_identity(
    setup: &CertifySetup,
    m: &MatrixOverAlgebra,
    cap: u32,
) -> Result<Vec<((usize, usize), Outcome)>, Error> {
    let delta = m.minus_identity(&setup.ctx);
    let dim = m.dim;
    (0..dim * dim)
        .into_par_iter()
        .map(|idx| {
            let (r, c) = (idx / dim, idx % dim);
            let outcome = setup.certify_zero_with_retry(delta.entry(r, c), cap)?;
            Ok(((r, c), outcome))
        })
        .collect()
}
