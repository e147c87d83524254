//! Finite-dimensional graded Lie-Rinehart algebras over exact fields.
//!
//! An instance is a pair `(L, A)` graded by a finitely generated abelian
//! group, described by four tables of structure constants: the Lie bracket on
//! `L`, the product on `A`, the action of `A` on `L` and the anchor
//! `(v, a) ↦ ρ(v)(a)`. The crate verifies the axioms, computes the support
//! connection classes, builds the class ideals and the resulting
//! decompositions, and decides gr-simplicity by exhaustive closure
//! computations over prime fields.

pub mod algebra;
pub mod catalog;
pub mod connections;
pub mod decomposition;
pub mod graded;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod simplicity;

pub use algebra::AlgebraInstance;
pub use graded::{BilinearRule, GradedBasis, GradedSubspace, HomogeneousVector};
pub use group::{GroupElement, GroupSpec};
pub use scalar::{FieldSpec, Scalar};
