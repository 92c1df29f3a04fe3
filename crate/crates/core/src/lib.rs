//! Exact algebra of double forms over a Euclidean space `R^n`.
//!
//! The crate provides the exterior product, Ricci contraction, double Hodge
//! star and composition product of double forms, the invariant families
//! built from them (characteristic coefficients, cofactor transformations,
//! Gauss-Bonnet curvatures, Einstein-Lovelock tensors, Pfaffians,
//! hyperdeterminants) and checkable predicates for the algebraic identities
//! those families satisfy. All algorithms are generic over [`Scalar`]; exact
//! rationals are the default.

pub mod dform;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod identities;
pub mod invariants;
pub mod linalg;
pub mod multiindex;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod pfaffian;
pub mod poly;
pub mod scalar;

pub use dform::DoubleForm;
pub use error::{Error, Result};
pub use exterior::{ExteriorForm, MultiForm};
pub use multiindex::MultiIndex;
pub use scalar::{Rational, Scalar};
