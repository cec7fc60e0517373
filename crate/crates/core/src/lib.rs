//! Numerical core for periodic lossy potentials, their Stark-ladder reduction
//! and the exceptional points of the resulting non-Hermitian spectra.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod analytic;
pub mod dynamics;
pub mod effective;
pub mod error;
pub mod fgh;
pub mod linalg;
pub mod matrix;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, RealMatrix, C64};
