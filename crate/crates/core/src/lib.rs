//! Critical points of polynomials `(z - a)^n * prod (z - z_j)^{n_j}` with
//! zeros in the closed unit disk, and numerical certificates that some
//! critical point lies within distance 1 of `a`.
//!
//! The free critical points are the roots of the degree-`k` deflated
//! derivative; everything else is built on [`roots::free_critical_points`].

pub mod asymptotic;
pub mod certify;
pub mod error;
pub mod hull;
pub mod poly;
pub mod roots;
pub mod sample;
pub mod search;

pub use error::{Error, ErrorKind, Result};
pub use poly::{CoefficientPolynomial, FactoredPolynomial, PrescribedRoot};
pub use roots::SolverOptions;
