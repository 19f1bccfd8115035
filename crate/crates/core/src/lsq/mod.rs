//! Least-squares machinery: pivoted Householder QR and discrete orthogonal
//! polynomial bases.

mod arnoldi;
mod qr;

pub use arnoldi::{build_ortho_basis, OrthoBasis};
pub use qr::{ls_solve, LsOptions, LsSolution, RankPolicy};
