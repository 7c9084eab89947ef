//! Exact computer algebra for the Lie superalgebra sl(m|n).
//!
//! The crate builds sl(m|n) as supermatrices, carries a sign-correct tensor
//! calculus on mixed powers of the natural module and its dual, decomposes
//! the tensor square of the adjoint representation, derives the critical
//! parameter of the quadratic Joseph ideal family and checks the minimal
//! differential-operator realization annihilated by that ideal.
//!
//! All arithmetic is exact over the rationals; the large linear-algebra
//! problems additionally run over prime fields for cross-checking.

pub mod error;
pub mod hwsolver;
pub mod joseph;
pub mod linalg;
pub mod rational;
pub mod suite;
pub mod superalgebra;
pub mod superspace;
pub mod tensoralg;
pub mod weylreal;

pub use error::{Error, Result};
pub use rational::Q;
pub use superalgebra::{Slmn, SuperMatrix};
pub use superspace::{SuperDim, Weight};
pub use tensoralg::{SlotKind, SuperTensor};
