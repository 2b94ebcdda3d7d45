//! `ln Γ`, `ψ` and `ψ'` on the positive axis: upward recurrence to
//! `x >= shift_threshold`, then the asymptotic series with its first omitted
//! term as the truncation bound.

use super::bernoulli::{cast, series};
use super::EvalPrecision;
use crate::error::{domain, Result};
use crate::scalar::Real;

/// A value together with a bound on the series truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded<T> {
    pub value: T,
    pub truncation: f64,
}

fn shift<T: Real>(x: T, threshold: f64) -> (T, u32) {
    let mut z = x;
    let mut n = 0;
    while z.as_f64() < threshold {
        z += T::one();
        n += 1;
    }
    (z, n)
}

fn check<T: Real>(what: &str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(domain(what, x.as_f64()))
    }
}

/// Sums `sum_k c_k * z^{-(2k-1)}`-type tails until terms fall below the
/// working precision; returns the sum and the first omitted term.
fn tail<T: Real>(coeffs: &[crate::Dd], first: T, step: T, scale: T) -> (T, f64) {
    let eps = T::epsilon();
    let mut acc = T::zero();
    let mut pw = first;
    let mut last = f64::INFINITY;
    for c in coeffs.iter().skip(1) {
        let term = cast::<T>(*c) * pw;
        let mag = term.abs().as_f64();
        if mag > last {
            // the asymptotic series started diverging; stop at the smallest term
            return (acc, last);
        }
        if mag <= eps * scale.abs().as_f64() {
            return (acc, mag);
        }
        acc += term;
        last = mag;
        pw *= step;
    }
    (acc, last)
}

pub fn log_gamma_bounded<T: Real>(x: T, prec: &EvalPrecision) -> Result<Bounded<T>> {
    check("log_gamma", x)?;
    let (z, n) = shift(x, prec.shift_threshold);
    let mut prod = T::one();
    let mut k = x;
    for _ in 0..n {
        prod *= k;
        k += T::one();
    }
    let main = (z - T::of(0.5)) * z.ln() - z + T::ln_sqrt_2pi();
    let zi = z.recip();
    let (s, bound) = tail(&series().lgamma, zi, zi * zi, main);
    let value = main + s - if n > 0 { prod.ln() } else { T::zero() };
    Ok(Bounded { value, truncation: bound })
}

pub fn log_gamma<T: Real>(x: T, prec: &EvalPrecision) -> Result<T> {
    Ok(log_gamma_bounded(x, prec)?.value)
}

pub fn digamma<T: Real>(x: T, prec: &EvalPrecision) -> Result<T> {
    check("digamma", x)?;
    let (z, n) = shift(x, prec.shift_threshold);
    let mut acc = T::zero();
    let mut k = x;
    for _ in 0..n {
        acc += k.recip();
        k += T::one();
    }
    let zi = z.recip();
    let z2 = zi * zi;
    let main = z.ln() - T::of(0.5) * zi;
    let (s, _) = tail(&series().digamma, z2, z2, main);
    Ok(main - s - acc)
}

pub fn trigamma<T: Real>(x: T, prec: &EvalPrecision) -> Result<T> {
    check("trigamma", x)?;
    let (z, n) = shift(x, prec.shift_threshold);
    let mut acc = T::zero();
    let mut k = x;
    for _ in 0..n {
        acc += (k * k).recip();
        k += T::one();
    }
    let zi = z.recip();
    let z2 = zi * zi;
    let main = zi + T::of(0.5) * z2;
    let (s, _) = tail(&series().trigamma, z2 * zi, z2, main);
    Ok(main + s + acc)
}

pub fn digamma_trigamma<T: Real>(x: T, prec: &EvalPrecision) -> Result<(T, T)> {
    Ok((digamma(x, prec)?, trigamma(x, prec)?))
}
