//! Dense symmetric/PSD matrix kernel: decompositions, matrix functions, rank
//! decisions, and the trace inner product the rest of the crate is built on.
//!
//! Everything here is a pure function on immutable values; dimensions beyond
//! a few hundred are out of scope.

// Index loops over matrix entries are the house style in this kernel.
#![allow(clippy::needless_range_loop)]

mod chol;
mod eigen;
mod expm;
pub(crate) mod lu;
mod matrix;
mod ops;

pub use chol::chol_psd;
pub use eigen::{sym_eig, SymEigen};
pub use expm::mat_exp;
pub use matrix::{GeneralMatrix, PsdMatrix, SymMatrix, PSD_FLOOR, RANK_TOL, SYMMETRY_TOL};
pub use ops::{
    logdet_shifted, logdet_shifted_c, logdet_shifted_sym, psd_sqrt, rank_psd, rank_psd_default,
};

pub(crate) use chol::householder_qr;
pub(crate) use ops::shifted_spectrum;
