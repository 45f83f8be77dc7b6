//! Exact computer algebra for quadratic Lie superalgebras.
//!
//! Algebras are given by rational structure constants on a graded basis.
//! The crate computes cohomology with trivial coefficients through the
//! cochain algebra `Alt(g₀*) ⊗ Sym(g₁*)`, the super Poisson bracket induced by
//! an invariant form, and double extensions.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod format;
pub mod linalg;
pub mod quadratic;
pub mod scalar;
pub mod sp2;
pub mod superexterior;

pub use algebra::{GradedBasis, LieSuperalgebra, Parity, ValidationReport};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use quadratic::{BilinearForm, DarbouxFrame, QuadraticLieSuperalgebra};
pub use scalar::Scalar;
pub use superexterior::{Cochain, Monomial};
