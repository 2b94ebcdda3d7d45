//! Exact exponential polynomials over the rationals.

pub mod catalog;
mod certify;
mod exppoly;
mod parse;
mod poly;

pub use certify::{
    certify_absolutely_monotonic, AMCertificate, CertificationFailure, FailureReason, ReplayError, Step,
    CERTIFICATE_SCHEMA,
};
pub use exppoly::ExpPoly;
pub use parse::parse_expoly;
pub(crate) use poly::fmt_rational;
pub use poly::Poly;
