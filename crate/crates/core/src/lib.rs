//! Lightning-plus-polynomial (LP) rational approximation with uniform
//! exponentially clustered poles.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`domain`]: sector geometry, the branch-singular prototype targets
//!   `g(z) z^α` and `g(z) z^α log z`, sample plans and Chebyshev/Lagrange helpers.
//! * [`quadrature`]: integral representations of the prototypes, a trapezoid
//!   engine over the real line with Poisson-summation error bounds, and the
//!   closed-form reference sums.
//! * [`lightning`]: pole clustering, analytic residues and assembly of the
//!   approximant `Σ a_j/(z - p_j) + P(z)`.
//! * [`lsq`]: Arnoldi-orthogonalized polynomial bases and a Householder QR
//!   least-squares solver.
//! * [`laplace`]: Laplace problems and conformal maps on polygons.
//! * [`bench`]: convergence records, root-exponential rate fits and error budgets.
// Float methods come from num-traits (libm) here; they resolve inherently
// whenever std is linked, which makes those imports redundant in such builds.
#![no_std]
// `!(x > 0.0)` is the NaN-rejecting form of the parameter checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bench;
pub mod domain;
mod error;
pub mod laplace;
pub mod lightning;
pub mod lsq;
pub mod math;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
