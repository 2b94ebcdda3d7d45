use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{bound, evaluate_bound, BoundSpec};
use crate::error::{domain, Error, Result};
use crate::gamma_ref::{log_gamma, trigamma, EvalPrecision};
use crate::monotonicity::Grid;
use crate::scalar::{Dd, Real};

const COEFFS: [(i64, i64); 4] = [(1, 240), (-11, 6720), (107, 80640), (-2911, 1520640)];

/// Coefficients of `x^-3, x^-5, x^-7, x^-9` correcting `ψ'(x+1/2)/12`.
pub fn asymptotic_coefficients() -> Vec<BigRational> {
    COEFFS.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect()
}

/// `ψ'(x+1/2)/12` plus the first `terms` corrections.
pub fn asymptotic_series<T: Real>(x: T, terms: usize) -> Result<T> {
    if terms > COEFFS.len() {
        return Err(Error::Parameter(format!("at most {} correction terms, got {terms}", COEFFS.len())));
    }
    if !(x > T::zero()) {
        return Err(domain("asymptotic series", x.as_f64()));
    }
    let mut s = trigamma(x + T::of(0.5), &EvalPrecision::default())? / T::of(12.0);
    for (i, &(n, d)) in COEFFS.iter().take(terms).enumerate() {
        s = s + T::from_int(n) / (T::from_int(d) * x.powi(2 * i as i32 + 3));
    }
    Ok(s)
}

/// `ln √(2π) + (x+1/2) ln x − x + asymptotic_series(x, terms)`, approximating `ln Γ(x+1)`.
pub fn asymptotic_gamma_ln<T: Real>(x: T, terms: usize) -> Result<T> {
    let s = asymptotic_series(x, terms)?;
    Ok(T::ln_sqrt_2pi() + (x + T::of(0.5)) * x.ln() - x + s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftError {
    pub shift: f64,
    /// `|ln n! − ln approx|`.
    pub error: f64,
}

/// Errors of `ln n! ≈ n ln n − n + ln √(2πn) + ψ'(n+a)/12` per shift `a`, and the best shift.
pub fn best_shift(n: u32, shifts: &[f64]) -> Result<(f64, Vec<ShiftError>)> {
    if n == 0 || shifts.is_empty() {
        return Err(Error::Parameter("need n >= 1 and at least one shift".into()));
    }
    let p = EvalPrecision::default();
    let nd = Dd::from(n as i32);
    let exact = log_gamma(nd + Dd::ONE, &p)?;
    let base = nd * nd.ln() - nd + Dd::LN_SQRT_2PI + Dd::from_f64(0.5) * nd.ln();
    let errs = shifts
        .iter()
        .map(|&a| {
            let approx = base + trigamma(nd + Dd::from_f64(a), &p)? / Dd::from(12);
            Ok(ShiftError { shift: a, error: (exact - approx).abs().hi() })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = errs.iter().fold(errs[0], |m, e| if e.error < m.error { *e } else { m });
    Ok((best.shift, errs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LuFamily {
    Jnt,
    Wang,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LuThreshold {
    pub spec: String,
    pub k: f64,
    /// Smallest grid point from which the upper bound holds at every later point.
    pub holds_from: Option<f64>,
    /// Smallest grid point from which it fails at every later point.
    pub reversed_from: Option<f64>,
    pub failures: usize,
    pub points: usize,
}

/// Empirical location of the unstated thresholds `m1`, `m2` on `grid`.
pub fn lu_threshold(family: LuFamily, k: f64, grid: &Grid) -> Result<LuThreshold> {
    if !(k > 0.0) {
        return Err(Error::Parameter(format!("k must be positive, got {k}")));
    }
    let name = match family {
        LuFamily::Jnt => "lu_jnt",
        LuFamily::Wang => "lu_wang",
    };
    let s = bound(name)?.with_param("k", k);
    let pts = grid.points(0);
    // a side that cannot be evaluated (negative bracket) counts as a failure
    let ok: Vec<bool> = pts
        .iter()
        .map(|&x| {
            s.check_x(x)?;
            Ok(evaluate_bound(&s, x).map(|e| e.upper_margin.is_some_and(|m| m > 0.0)).unwrap_or(false))
        })
        .collect::<Result<_>>()?;
    let tail_start = |want: bool| {
        let i = ok.iter().rposition(|&v| v != want).map_or(0, |i| i + 1);
        (i < pts.len()).then(|| pts[i])
    };
    Ok(LuThreshold {
        spec: name.into(),
        k,
        holds_from: tail_start(true),
        reversed_from: tail_start(false),
        failures: ok.iter().filter(|&&v| !v).count(),
        points: pts.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnclosureRow {
    pub x: f64,
    pub target: f64,
    pub derived_lower: f64,
    pub derived_upper: f64,
    pub reference_lower: f64,
    pub reference_upper: f64,
    /// Derived sides enclose the target.
    pub encloses: bool,
    /// Both derived sides are strictly inside the reference enclosure.
    pub tighter: bool,
}

/// Compares `lcm_derived` against `burnside_sqrt_shift` at each `x`.
pub fn derived_enclosure_check(xs: &[f64]) -> Result<Vec<EnclosureRow>> {
    let (d, r): (BoundSpec, BoundSpec) = (bound("lcm_derived")?, bound("burnside_sqrt_shift")?);
    xs.iter()
        .map(|&x| {
            let (a, c) = (evaluate_bound(&d, x)?, evaluate_bound(&r, x)?);
            let (dl, du) = (a.lower.expect("two-sided"), a.upper.expect("two-sided"));
            let (rl, ru) = (c.lower.expect("two-sided"), c.upper.expect("two-sided"));
            Ok(EnclosureRow {
                x,
                target: a.target,
                derived_lower: dl,
                derived_upper: du,
                reference_lower: rl,
                reference_upper: ru,
                encloses: a.lower_margin.unwrap() > 0.0 && a.upper_margin.unwrap() > 0.0,
                tighter: dl > rl && du < ru,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn coefficient_readback() {
        let c = asymptotic_coefficients();
        assert_eq!(c[0], BigRational::one() / BigRational::from_integer(240.into()));
        let text: Vec<String> = c.iter().map(|q| q.to_string()).collect();
        assert_eq!(text, ["1/240", "-11/6720", "107/80640", "-2911/1520640"]);
    }

    #[test]
    fn series_guards() {
        assert!(asymptotic_series(1.0f64, 5).is_err());
        assert!(asymptotic_series(0.0f64, 1).is_err());
        assert!(lu_threshold(LuFamily::Jnt, 0.0, &Grid::new(1.0, 1.0, 2).unwrap()).is_err());
    }
}
