//! Symmetry breaking transforms of Rankin-Cohen and Juhl type, their
//! holographic inverses, and the exact and numerical machinery to check them.
//!
//! The crate is layered bottom-up:
//! [`scalar`] and [`poly`] provide the numeric tower and polynomials,
//! [`special_poly`] the gamma family and orthogonal polynomials,
//! [`quadrature`] the Gaussian rules, and [`term_algebra`] the symbolic
//! holomorphic functions. [`rc_transform`], [`l2_model`] and [`juhl`] build the
//! transforms on top.

pub mod error;
pub mod juhl;
pub mod l2_model;
pub mod poly;
pub mod quadrature;
pub mod rc_transform;
pub mod scalar;
pub mod special_poly;
pub mod term_algebra;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::{MultiPoly, PolyOneVar, PolyTwoVar};
pub use scalar::{Qi, Scalar};
pub use term_algebra::{Factor, HoloSum, HoloTerm};
