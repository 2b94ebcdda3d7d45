//! Remainders of Burnside's and Stirling's formulas for the gamma function.
//!
//! * [`expoly`]: exact exponential polynomials and absolute-monotonicity certificates.
//! * [`gamma_ref`]: log-gamma, digamma, trigamma and the remainder catalog.
//! * [`quadrature`]: Laplace-type integral representations.
//! * [`monotonicity`]: finite-difference evidence for (logarithmic) complete monotonicity.
//! * [`bounds`]: the inequality catalog and comparisons.

pub mod bounds;
pub mod error;
pub mod expoly;
pub mod gamma_ref;
pub mod monotonicity;
pub mod quadrature;
pub mod scalar;
pub mod suite;
mod ser;

pub use error::{Error, Result};
pub use expoly::{AMCertificate, ExpPoly, Poly};
pub use scalar::{Dd, Real};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
