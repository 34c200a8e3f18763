//! Exact-arithmetic toolkit for finite-dimensional Lie algebras, reductive
//! pseudo-Riemannian homogeneous spaces, geodesic-orbit checks, and
//! weak-symmetry witnesses.

pub mod forms;
pub mod geodesic;
pub mod homogeneous;
pub mod lie;
pub mod linalg;
pub mod rational;

pub use forms::{BilinearForm, Signature};
pub use homogeneous::ReductiveSpace;
pub use lie::{LieAlgebra, Nilpotency, Subspace};
pub use rational::Rat;
