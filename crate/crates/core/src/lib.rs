//! Exact computations in graded Lie algebras of Virasoro type.
//!
//! The crate provides arbitrary-precision rational arithmetic, a registry of
//! algebras (Witt, Virasoro, Heisenberg, the twisted Heisenberg-Virasoro
//! algebra and its relatives), tensor modules under the diagonal adjoint
//! action, coboundary cobrackets with Yang-Baxter checkers, and windowed
//! first-cohomology solvers over exact rational linear systems.

pub mod algebra;
pub mod bialgebra;
pub mod expr;
pub mod freevec;
pub mod linsys;
pub mod rules;
pub mod scalar;
pub mod tensor;

pub use algebra::{Algebra, AlgebraError, BasisVector, Degree, Element};
pub use freevec::FreeVector;
pub use scalar::Scalar;
pub use tensor::{Pair, Tensor2, Tensor3, TensorKey};
