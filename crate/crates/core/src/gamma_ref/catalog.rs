use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{b, big_f, big_g, digamma, log_gamma, theta, trigamma, vartheta, w, EvalPrecision};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Half-line `(lo, inf)` or `[lo, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub lo_open: bool,
}

impl Interval {
    pub const fn open(lo: f64) -> Interval {
        Interval { lo, lo_open: true }
    }

    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && if self.lo_open { x > self.lo } else { x >= self.lo }
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}, inf)", if self.lo_open { "(" } else { "[" }, self.lo)
    }
}

/// Named functions of `x` assembled from the reference special functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CatalogFunction {
    Theta,
    Vartheta,
    B,
    W,
    /// `e^{x + 1/(24(x+1/2))} Γ(x+1) / (x+1/2)^{x+1/2}`.
    H,
    /// `H` with `1/(24(x+λ))` in the exponent.
    HLambda { lambda: f64 },
    /// `e^x Γ(x+1) / (x^x √(2πx) e^{ψ'(x+α)/12})`.
    FAlpha { alpha: f64 },
    /// `e^x Γ(x+1) / (x+α)^{x+α}`.
    GAlpha { alpha: f64 },
    BigF,
    BigG,
    /// `λ(px) - q λ(x)` with `λ(x) = (ln x - 1/(2x) - ψ(x)) / 2`.
    LambdaPq { p: f64, q: f64 },
    /// `φ(px) - q φ(x)` with `φ(x) = (ψ(x+1/2) - ln x) / 2`.
    PhiPq { p: f64, q: f64 },
    /// `r [θ(px) - q θ(x)]`.
    Fpqr { p: f64, q: f64, r: f64 },
}

/// `λ(x)` through the digamma identity.
pub fn lambda<T: Real>(x: T, prec: &EvalPrecision) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("lambda", x.as_f64()));
    }
    Ok((x.ln() - T::of(0.5) / x - digamma(x, prec)?) * T::of(0.5))
}

/// `φ(x)` through the digamma identity.
pub fn phi<T: Real>(x: T, prec: &EvalPrecision) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("phi", x.as_f64()));
    }
    Ok((digamma(x + T::of(0.5), prec)? - x.ln()) * T::of(0.5))
}

impl CatalogFunction {
    /// Registry label, e.g. `g_alpha(alpha=1)`.
    pub fn label(&self) -> String {
        use CatalogFunction::*;
        match *self {
            Theta => "theta".into(),
            Vartheta => "vartheta".into(),
            B => "b".into(),
            W => "w".into(),
            H => "H".into(),
            HLambda { lambda } => format!("H_lambda(lambda={lambda})"),
            FAlpha { alpha } => format!("F_alpha(alpha={alpha})"),
            GAlpha { alpha } => format!("g_alpha(alpha={alpha})"),
            BigF => "BigF".into(),
            BigG => "BigG".into(),
            LambdaPq { p, q } => format!("Lambda_pq(p={p},q={q})"),
            PhiPq { p, q } => format!("Phi_pq(p={p},q={q})"),
            Fpqr { p, q, r } => format!("f_pqr(p={p},q={q},r={r})"),
        }
    }

    /// Looks a function up by name; parameters missing from `params` are an error.
    pub fn from_name(name: &str, params: &BTreeMap<String, f64>) -> Result<CatalogFunction> {
        use CatalogFunction::*;
        let get = |k: &str| {
            params
                .get(k)
                .copied()
                .ok_or_else(|| Error::Parameter(format!("{name} needs parameter `{k}`")))
        };
        let f = match name {
            "theta" => Theta,
            "vartheta" => Vartheta,
            "b" => B,
            "w" => W,
            "H" | "h" => H,
            "H_lambda" | "h_lambda" => HLambda { lambda: get("lambda")? },
            "F_alpha" | "f_alpha" => FAlpha { alpha: get("alpha")? },
            "g_alpha" => GAlpha { alpha: get("alpha")? },
            "BigF" | "big_f" => BigF,
            "BigG" | "big_g" => BigG,
            "Lambda_pq" | "lambda_pq" => LambdaPq { p: get("p")?, q: get("q")? },
            "Phi_pq" | "phi_pq" => PhiPq { p: get("p")?, q: get("q")? },
            "f_pqr" => Fpqr { p: get("p")?, q: get("q")?, r: get("r")? },
            _ => return Err(Error::Unknown { kind: "catalog function", name: name.into() }),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        use CatalogFunction::*;
        match *self {
            HLambda { lambda } if !(lambda >= 0.0) => Err(Error::Parameter("H_lambda needs lambda >= 0".into())),
            LambdaPq { p, .. } | PhiPq { p, .. } if !(p > 0.0) => Err(Error::Parameter("p must be positive".into())),
            Fpqr { p, r, .. } if !(p > 0.0) || r == 0.0 => Err(Error::Parameter("f_pqr needs p > 0 and r != 0".into())),
            FAlpha { alpha } | GAlpha { alpha } if !alpha.is_finite() => {
                Err(Error::Parameter("alpha must be finite".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn domain(&self) -> Interval {
        use CatalogFunction::*;
        match *self {
            B | W => Interval::open(-0.5),
            FAlpha { alpha } | GAlpha { alpha } => Interval::open(f64::max(0.0, -alpha)),
            _ => Interval::open(0.0),
        }
    }

    /// Natural logarithm for the functions defined as positive products.
    pub fn ln_eval<T: Real>(&self, x: T, prec: &EvalPrecision) -> Option<Result<T>> {
        use CatalogFunction::*;
        let half = T::of(0.5);
        let r = match *self {
            H => self.check(x).and_then(|_| {
                let s = x + half;
                Ok(x + (T::of(24.0) * s).recip() + log_gamma(x + T::one(), prec)? - s * s.ln())
            }),
            HLambda { lambda } => self.check(x).and_then(|_| {
                let s = x + half;
                Ok(x + (T::of(24.0) * (x + T::of(lambda))).recip() + log_gamma(x + T::one(), prec)? - s * s.ln())
            }),
            FAlpha { alpha } => self
                .check(x)
                .and_then(|_| Ok(theta(x, prec)? - trigamma(x + T::of(alpha), prec)? / T::of(12.0))),
            GAlpha { alpha } => self.check(x).and_then(|_| {
                let s = x + T::of(alpha);
                let xlx = if s == T::zero() { T::zero() } else { s * s.ln() };
                Ok(x + log_gamma(x + T::one(), prec)? - xlx)
            }),
            _ => return None,
        };
        Some(r)
    }

    fn check<T: Real>(&self, x: T) -> Result<()> {
        if self.domain().contains(x.as_f64()) {
            Ok(())
        } else {
            Err(domain(self.label(), x.as_f64()))
        }
    }

    pub fn eval<T: Real>(&self, x: T, prec: &EvalPrecision) -> Result<T> {
        use CatalogFunction::*;
        self.validate()?;
        self.check(x)?;
        if let Some(l) = self.ln_eval(x, prec) {
            return Ok(l?.exp());
        }
        match *self {
            Theta => theta(x, prec),
            Vartheta => vartheta(x, prec),
            B => b(x, prec),
            W => w(x, prec),
            BigF => big_f(x),
            BigG => big_g(x),
            LambdaPq { p, q } => Ok(lambda(T::of(p) * x, prec)? - T::of(q) * lambda(x, prec)?),
            PhiPq { p, q } => Ok(phi(T::of(p) * x, prec)? - T::of(q) * phi(x, prec)?),
            Fpqr { p, q, r } => Ok(T::of(r) * (theta(T::of(p) * x, prec)? - T::of(q) * theta(x, prec)?)),
            H | HLambda { .. } | FAlpha { .. } | GAlpha { .. } => unreachable!("handled by ln_eval"),
        }
    }
}
