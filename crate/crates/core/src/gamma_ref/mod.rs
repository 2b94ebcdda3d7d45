//! Reference values for `ln Γ`, `ψ`, `ψ'` and the remainder functions,
//! computed from the log-gamma series only (never from the integral
//! representations), so they can cross-check the quadrature path.

mod bernoulli;
mod catalog;
mod special;

use serde::{Deserialize, Serialize};

pub use bernoulli::{bernoulli, bernoulli_numbers};
pub use catalog::{lambda, phi, CatalogFunction, Interval};
pub use special::{digamma, digamma_trigamma, log_gamma, log_gamma_bounded, trigamma, Bounded};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Working-precision record threaded through every reference evaluation.
///
/// `working_digits` is what the caller asks for; a scalar type that carries
/// fewer digits (f64 has 15) simply delivers its own precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPrecision {
    pub working_digits: u32,
    pub shift_threshold: f64,
}

impl Default for EvalPrecision {
    fn default() -> Self {
        EvalPrecision { working_digits: 32, shift_threshold: 20.0 }
    }
}

impl EvalPrecision {
    pub fn new(working_digits: u32, shift_threshold: f64) -> Result<Self> {
        if working_digits < 25 {
            return Err(Error::Parameter(format!("working_digits {working_digits} < 25")));
        }
        if !(shift_threshold >= 10.0) {
            return Err(Error::Parameter(format!("shift_threshold {shift_threshold} < 10")));
        }
        Ok(EvalPrecision { working_digits, shift_threshold })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Remainder {
    Theta,
    Vartheta,
    B,
    W,
}

impl std::str::FromStr for Remainder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theta" => Remainder::Theta,
            "vartheta" => Remainder::Vartheta,
            "b" => Remainder::B,
            "w" => Remainder::W,
            _ => return Err(Error::Unknown { kind: "remainder", name: s.into() }),
        })
    }
}

/// `θ(x) = ln Γ(x) - (x - 1/2) ln x + x - ln √(2π)`, `x > 0`.
pub fn theta<T: Real>(x: T, p: &EvalPrecision) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("theta", x.as_f64()));
    }
    Ok(log_gamma(x, p)? - (x - T::of(0.5)) * x.ln() + x - T::ln_sqrt_2pi())
}

/// `b(x) = ln Γ(x+1) - ln √(2π) - (x + 1/2) ln(x + 1/2) + x + 1/2`, `x > -1/2`.
pub fn b<T: Real>(x: T, p: &EvalPrecision) -> Result<T> {
    let s = x + T::of(0.5);
    if !(s > T::zero()) {
        return Err(domain("b", x.as_f64()));
    }
    Ok(log_gamma(x + T::one(), p)? - T::ln_sqrt_2pi() - s * s.ln() + s)
}

/// `w(x) = 12 x b(x)`.
pub fn w<T: Real>(x: T, p: &EvalPrecision) -> Result<T> {
    Ok(T::of(12.0) * x * b(x, p)?)
}

/// `ϑ(x) = 12 x θ(x)`.
pub fn vartheta<T: Real>(x: T, p: &EvalPrecision) -> Result<T> {
    Ok(T::of(12.0) * x * theta(x, p)?)
}

pub fn remainder<T: Real>(name: Remainder, x: T, p: &EvalPrecision) -> Result<T> {
    match name {
        Remainder::Theta => theta(x, p),
        Remainder::Vartheta => vartheta(x, p),
        Remainder::B => b(x, p),
        Remainder::W => w(x, p),
    }
}

/// `G(x) = (x + 1/2) ln(1 + 1/(2x)) - 1/2`.
pub fn big_g<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("BigG", x.as_f64()));
    }
    Ok((x + T::of(0.5)) * (T::of(0.5) / x).ln_1p() - T::of(0.5))
}

/// `F(x) = 1 + 4x - 8x (x + 1/2) ln(1 + 1/(2x))`.
pub fn big_f<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("BigF", x.as_f64()));
    }
    Ok(T::one() + T::of(4.0) * x - T::of(8.0) * x * (x + T::of(0.5)) * (T::of(0.5) / x).ln_1p())
}

/// `12 x [ln Γ(x+1) - x ln x + x - ln √(2π)]`, whose critical point is the
/// root found by [`vartheta_minimum`].
pub fn vartheta_profile<T: Real>(x: T, p: &EvalPrecision) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("vartheta_profile", x.as_f64()));
    }
    let inner = log_gamma(x + T::one(), p)? - x * x.ln() + x - T::ln_sqrt_2pi();
    Ok(T::of(12.0) * x * inner)
}

/// `ln Γ(β+1) + β ψ(β+1) - ln √(2π) - 2β ln β + β`.
pub fn vartheta_equation<T: Real>(beta: T, p: &EvalPrecision) -> Result<T> {
    let b1 = beta + T::one();
    Ok(log_gamma(b1, p)? + beta * digamma(b1, p)? - T::ln_sqrt_2pi() - T::of(2.0) * beta * beta.ln() + beta)
}

/// Root of [`vartheta_equation`] in `[0.1, 0.9]`: bisection to a narrow
/// bracket, then secant steps.
pub fn vartheta_minimum() -> Result<f64> {
    use crate::scalar::Dd;
    let p = EvalPrecision::default();
    let g = |x: f64| vartheta_equation(Dd::from_f64(x), &p).map(|v| v.as_f64());
    let (mut lo, mut hi) = (0.1, 0.9);
    let (mut flo, fhi) = (g(lo)?, g(hi)?);
    if flo * fhi > 0.0 {
        return Err(Error::Bracket { lo, hi });
    }
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        let fm = g(mid)?;
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let (mut x0, mut x1) = (lo, hi);
    let (mut f0, mut f1) = (g(x0)?, g(x1)?);
    for _ in 0..20 {
        if f1 == f0 || f1 == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = g(x1)?;
        if (x1 - x0).abs() < 1e-16 {
            break;
        }
    }
    Ok(x1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dd;

    fn p() -> EvalPrecision {
        EvalPrecision::default()
    }

    fn d(x: f64) -> Dd {
        Dd::from_f64(x)
    }

    #[test]
    fn remainder_values() {
        // b(1) = 3/2 - ln√(2π) - (3/2) ln(3/2)
        let want = d(1.5) - Dd::LN_SQRT_2PI - d(1.5) * d(1.5).ln();
        assert!((b(Dd::ONE, &p()).unwrap() - want).abs().hi() < 1e-30);
        assert!((b(1.0f64, &p()).unwrap() + 0.027136195366919).abs() < 1e-13);
        let t1 = theta(Dd::ONE, &p()).unwrap();
        assert!((t1 - (Dd::ONE - Dd::LN_SQRT_2PI)).abs().hi() < 1e-30);
        for x in [0.3, 1.0, 7.5] {
            let x = d(x);
            let r = w(x, &p()).unwrap() / (d(12.0) * x) - b(x, &p()).unwrap();
            assert!(r.abs().hi() < 1e-30);
        }
    }

    #[test]
    fn domains() {
        assert!(b(-0.5f64, &p()).is_err());
        assert!(b(-0.49f64, &p()).is_ok());
        assert!(theta(0.0f64, &p()).is_err());
        assert!(EvalPrecision::new(20, 20.0).is_err());
        assert!(EvalPrecision::new(30, 5.0).is_err());
        assert!("zeta".parse::<Remainder>().is_err());
    }

    #[test]
    fn x_b_tends_to_minus_one_over_24() {
        let x = d(1e6);
        let v = x * b(x, &p()).unwrap() + Dd::ONE / d(24.0);
        assert!(v.abs().hi() < 1e-6);
    }

    #[test]
    fn vartheta_root() {
        let beta = vartheta_minimum().unwrap();
        assert!((beta - 0.34142).abs() < 5e-6);
        assert!((beta - 0.341_420_190_723_420_4).abs() < 1e-13);
    }

    #[test]
    fn vartheta_itself_is_increasing() {
        // 12xθ(x) has no interior minimum; only the profile function does.
        let mut prev = vartheta(d(0.01), &p()).unwrap();
        for i in 1..200 {
            let v = vartheta(d(0.01 + 0.01 * i as f64), &p()).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }
}
