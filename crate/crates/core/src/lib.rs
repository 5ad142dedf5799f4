//! Exact symbolic verification toolkit for braided quantum automorphism
//! presentations over the circle group.
//!
//! The crate builds the finite presentations attached to a graded
//! finite-dimensional *-algebra and a deformation parameter ζ (a root of
//! unity or a formal variable), and produces machine-checkable
//! certificates for the algebraic identities the presentations satisfy:
//! unitarity of the fundamental matrix, well-definedness and
//! coassociativity of the comultiplication, the action axioms on the
//! underlying algebra, bosonisation, crossed-product filtrations, and
//! the classical degenerations.
//!
//! Layering, bottom up:
//! - [`scalars`]: exact cyclotomic / rational-function arithmetic and
//!   sparse linear solving;
//! - [`graded`]: concrete graded matrix algebras;
//! - [`concrete`]: braiding unitaries and Hilbert-space-level braided
//!   tensor products;
//! - [`presentation`]: generators, relation schemas, comultiplications;
//! - [`engine`]: normal ordering, tensor arithmetic, and degree-capped
//!   ideal-membership certificates;
//! - [`filtration`]: symbolic crossed products and their orthogonal
//!   filtrations;
//! - [`verifier`]: theorem-level suites that replay every identity as a
//!   batch of certificates and emit structured reports.

pub mod concrete;
pub mod engine;
pub mod error;
pub mod filtration;
pub mod graded;
pub mod presentation;
pub mod scalars;
pub mod verifier;

pub use error::Error;
pub use scalars::{Scalar, ZetaMode};
