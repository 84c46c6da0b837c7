//! Non-central Wishart distributions on the cone of positive semidefinite
//! matrices: existence decisions, Laplace/Fourier transform evaluation, exact
//! and approximate sampling, and the affine (Wishart) processes whose
//! transition laws they are.

pub mod error;
pub mod existence;
pub mod io;
pub mod montecarlo;
pub mod process;
pub mod symcone;
pub mod verify;
pub mod wishart;

pub use error::{Result, WishartError};
