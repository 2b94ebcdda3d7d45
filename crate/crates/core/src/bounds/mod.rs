//! Two-sided inequalities for `Γ(x+1)`, their verification and comparison.
//!
//! Every bound is stated for one of a few normalized targets so that "upper"
//! always means an upper envelope of the same quantity.

mod analysis;
mod compare;
mod expr;

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use analysis::{
    asymptotic_coefficients, asymptotic_gamma_ln, asymptotic_series, best_shift, lu_threshold, derived_enclosure_check,
    LuFamily, LuThreshold, EnclosureRow, ShiftError,
};
pub use compare::{compare_bounds, ComparisonResult, Side, WinnerInterval};
pub use expr::Expr;

use crate::error::{domain, Error, Result};
use crate::gamma_ref::{log_gamma, CatalogFunction, EvalPrecision, Interval};
use crate::monotonicity::Grid;
use crate::scalar::{Dd, Real};

/// The bounded quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `e^x Γ(x+1) / (x^x √(2πx))`.
    StirlingRatio,
    /// `e^{x+1/2} Γ(x+1) / (√(2π) (x+1/2)^{x+1/2}) = e^{b(x)}`.
    BurnsideRatio,
    /// `e^{x + 1/(24(x+1/2))} Γ(x+1) / (x+1/2)^{x+1/2}`.
    H,
    /// `Γ(x+1)`.
    Gamma,
}

impl Target {
    pub fn eval<T: Real>(self, x: T, p: &EvalPrecision) -> Result<T> {
        let lg = |z: T| log_gamma(z, p);
        let ln = match self {
            Target::StirlingRatio => {
                if !(x > T::zero()) {
                    return Err(domain("stirling ratio", x.as_f64()));
                }
                lg(x + T::one())? + x - x * x.ln() - T::ln_sqrt_2pi() - T::of(0.5) * x.ln()
            }
            Target::BurnsideRatio => crate::gamma_ref::b(x, p)?,
            Target::H => CatalogFunction::H.ln_eval(x, p).expect("H has a log form")?,
            Target::Gamma => lg(x + T::one())?,
        };
        Ok(ln.exp())
    }
}

fn yes() -> bool {
    true
}

/// One catalog inequality `lower < target < upper` on `domain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub name: String,
    pub target: Target,
    #[serde(default)]
    pub lower: Option<String>,
    #[serde(default)]
    pub upper: Option<String>,
    pub domain: Interval,
    #[serde(default)]
    pub integer_only: bool,
    #[serde(default = "yes")]
    pub strict_lower: bool,
    #[serde(default = "yes")]
    pub strict_upper: bool,
    /// `false` when validity is only known beyond an unstated threshold.
    #[serde(default = "yes")]
    pub asserted: bool,
    pub provenance: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEval {
    pub x: f64,
    pub lower: Option<f64>,
    pub target: f64,
    pub upper: Option<f64>,
    /// `target - lower`, computed before rounding the sides.
    pub lower_margin: Option<f64>,
    /// `upper - target`.
    pub upper_margin: Option<f64>,
}

impl BoundEval {
    pub fn margin(&self) -> f64 {
        self.lower_margin.into_iter().chain(self.upper_margin).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: f64,
    /// `"lower"` or `"upper"`.
    pub side: String,
    pub margin: f64,
    pub eval: BoundEval,
}

/// Rounding budget for a margin, relative to the target.
fn budget(target: f64) -> f64 {
    64.0 * Dd::EPSILON * target.abs().max(1.0)
}

impl BoundSpec {
    pub fn validate(&self) -> Result<()> {
        if self.lower.is_none() && self.upper.is_none() {
            return Err(Error::Parameter(format!("{}: no side given", self.name)));
        }
        for s in self.lower.iter().chain(&self.upper) {
            for p in Expr::parse(s)?.parameters() {
                if !self.params.contains_key(&p) {
                    return Err(Error::Parameter(format!("{}: parameter `{p}` has no value", self.name)));
                }
            }
        }
        Ok(())
    }

    pub fn with_param(&self, name: &str, v: f64) -> BoundSpec {
        let mut s = self.clone();
        s.params.insert(name.to_string(), v);
        s
    }

    pub fn check_x(&self, x: f64) -> Result<()> {
        if !self.domain.contains(x) || (self.integer_only && x != x.round()) {
            return Err(domain(format!("{} domain {}", self.name, self.domain), x));
        }
        Ok(())
    }

    pub fn side<T: Real>(&self, side: Side, x: T, p: &EvalPrecision) -> Result<Option<T>> {
        let text = match side {
            Side::Lower => &self.lower,
            Side::Upper => &self.upper,
        };
        text.as_ref().map(|t| Expr::parse(t)?.eval(x, &self.params, p)).transpose()
    }

    fn eval_dd(&self, x: f64) -> Result<(Option<Dd>, Dd, Option<Dd>)> {
        self.check_x(x)?;
        let p = EvalPrecision::default();
        let xd = Dd::from_f64(x);
        Ok((self.side(Side::Lower, xd, &p)?, self.target.eval(xd, &p)?, self.side(Side::Upper, xd, &p)?))
    }
}

/// Lower side, target and upper side at `x`, in double-double.
pub fn evaluate_bound(s: &BoundSpec, x: f64) -> Result<BoundEval> {
    let (lo, t, up) = s.eval_dd(x)?;
    Ok(BoundEval {
        x,
        lower: lo.map(Dd::hi),
        target: t.hi(),
        upper: up.map(Dd::hi),
        lower_margin: lo.map(|l| (t - l).hi()),
        upper_margin: up.map(|u| (u - t).hi()),
    })
}

/// Points where a side fails, or where a strict side holds by less than the rounding budget.
pub fn verify_bound_on_grid(s: &BoundSpec, g: &Grid) -> Result<Vec<Violation>> {
    let pts = g.points(0);
    for &x in &pts {
        s.check_x(x)?;
    }
    let evals: Vec<BoundEval> = pts.par_iter().map(|&x| evaluate_bound(s, x)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for e in evals {
        let tol = budget(e.target);
        for (side, m, strict) in
            [("lower", e.lower_margin, s.strict_lower), ("upper", e.upper_margin, s.strict_upper)]
        {
            if let Some(m) = m {
                let bad = if strict { m <= tol } else { m < -tol };
                if bad {
                    out.push(Violation { x: e.x, side: side.into(), margin: m, eval: e });
                }
            }
        }
    }
    Ok(out)
}

const CATALOG_JSON: &str = r#"[
  {"name": "trigamma_double", "target": "stirling_ratio",
   "lower": "exp(trigamma(x + 1/2)/12)", "upper": "exp(trigamma(x)/12)",
   "domain": {"lo": 0.0, "lo_open": true},
   "provenance": "Sevli and Batir: F_alpha is LCM for alpha >= 1/2 and 1/F_0 is LCM"},
  {"name": "burnside_sqrt_shift", "target": "burnside_ratio",
   "lower": "exp(-1/(24*x))", "upper": "exp(-1/(24*(sqrt(x^2 + 3*x + 5/2) - 1/2)))",
   "domain": {"lo": 0.0, "lo_open": true}, "strict_upper": false,
   "provenance": "Bukac, Buric and Elezovic, rewritten for the Burnside ratio"},
  {"name": "h_constants", "target": "h",
   "lower": "sqrt(2*pi/e)", "upper": "sqrt(2)*exp(1/12)",
   "domain": {"lo": 0.0, "lo_open": true}, "strict_upper": false,
   "provenance": "Sevli and Batir: H is LCM, sharp constants at infinity and 0+"},
  {"name": "h_constants_burnside", "target": "burnside_ratio",
   "lower": "exp(-1/(24*(x + 1/2)))", "upper": "exp(7/12)/sqrt(pi)*exp(-1/(24*(x + 1/2)))",
   "domain": {"lo": 0.0, "lo_open": true}, "strict_upper": false,
   "provenance": "h_constants divided through to bound the Burnside ratio"},
  {"name": "integer_asymptotic", "target": "stirling_ratio",
   "lower": "exp(trigamma(x + 1/2)/12 + 1/(240*x^3) - 11/(6720*x^5))",
   "upper": "exp(trigamma(x + 1/2)/12 + 1/(240*x^3))",
   "domain": {"lo": 1.0, "lo_open": false}, "integer_only": true,
   "provenance": "Mortici: truncations of the psi' asymptotic expansion at integers"},
  {"name": "lu_jnt", "target": "burnside_ratio",
   "upper": "(1 - k/(24*x) + (k^2/1152 + k/48)/x^2)^(1/k)",
   "domain": {"lo": 0.0, "lo_open": true}, "asserted": false, "params": {"k": 1.0},
   "provenance": "Lu: valid for x >= m1(k), threshold unstated"},
  {"name": "lu_wang", "target": "stirling_ratio",
   "upper": "(1 + k/(12*x) + k^2/(288*x^2))^(1/k)",
   "domain": {"lo": 0.0, "lo_open": true}, "asserted": false, "params": {"k": 1.0},
   "provenance": "Lu and Wang: holds for x >= m1 when k <= 5, reverses for x >= m2 when k >= 6"},
  {"name": "lcm_derived", "target": "burnside_ratio",
   "lower": "exp(-1/(12*(2*x + 1)))",
   "upper": "exp(-(x*(2*x + 5)/48 + 203/2880)/(x + 1)^3)",
   "domain": {"lo": -0.5, "lo_open": true},
   "provenance": "limits at infinity of the decreasing functions exp((2x+1)b) and exp(-(x+1)^3 b - x(2x+5)/48)"}
]"#;

/// The embedded inequality catalog.
pub fn catalog() -> Vec<BoundSpec> {
    load_catalog(CATALOG_JSON).expect("embedded catalog is valid")
}

pub fn load_catalog(json: &str) -> Result<Vec<BoundSpec>> {
    let specs: Vec<BoundSpec> = serde_json::from_str(json)?;
    for s in &specs {
        s.validate()?;
    }
    Ok(specs)
}

pub fn bound(name: &str) -> Result<BoundSpec> {
    catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Unknown { kind: "bound", name: name.into() })
}

/// 200 points over `(0, 50]`, or the integers `1..=20` for integer-only specs.
pub fn default_grid(s: &BoundSpec) -> Grid {
    if s.integer_only {
        Grid::new(s.domain.lo.max(1.0).ceil(), 1.0, 20).expect("valid grid")
    } else {
        Grid::spanning(0.25, 50.0, 200).expect("valid grid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub spec: String,
    pub x: f64,
    pub lower: Option<f64>,
    pub target: f64,
    pub upper: Option<f64>,
    pub margin: f64,
}

impl BoundRow {
    pub fn new(spec: &BoundSpec, e: &BoundEval) -> BoundRow {
        BoundRow { spec: spec.name.clone(), x: e.x, lower: e.lower, target: e.target, upper: e.upper, margin: e.margin() }
    }
}

/// Writes `spec,x,lower,target,upper,margin` rows.
pub fn write_csv(rows: &[BoundRow], header: bool, w: impl Write) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(header).from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub spec: String,
    pub asserted: bool,
    pub points: usize,
    pub violations: usize,
    pub min_margin: f64,
}

/// Verifies every spec on its default grid.
pub fn catalog_summary(specs: &[BoundSpec]) -> Result<Vec<SpecSummary>> {
    specs
        .iter()
        .map(|s| {
            let g = default_grid(s);
            let v = verify_bound_on_grid(s, &g)?;
            let min_margin = g
                .points(0)
                .iter()
                .map(|&x| evaluate_bound(s, x).map(|e| e.margin()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            Ok(SpecSummary { spec: s.name.clone(), asserted: s.asserted, points: g.count, violations: v.len(), min_margin })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_and_is_ordered() {
        for s in catalog() {
            let x = if s.integer_only { 3.0 } else { 2.0 };
            let e = evaluate_bound(&s, x).unwrap();
            if let (Some(l), Some(u)) = (e.lower, e.upper) {
                assert!(l <= u, "{}", s.name);
            }
        }
        assert!(bound("nope").is_err());
    }

    #[test]
    fn trigamma_double_at_one() {
        let e = evaluate_bound(&bound("trigamma_double").unwrap(), 1.0).unwrap();
        assert!((e.lower.unwrap() - 1.081015).abs() < 1e-6);
        assert!((e.target - 1.084437).abs() < 1e-6);
        assert!((e.upper.unwrap() - (std::f64::consts::PI.powi(2) / 72.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn integer_asymptotic_at_one() {
        let e = evaluate_bound(&bound("integer_asymptotic").unwrap(), 1.0).unwrap();
        let psi1 = std::f64::consts::PI.powi(2) / 2.0 - 4.0;
        let t = std::f64::consts::E / (2.0 * std::f64::consts::PI).sqrt() / (psi1 / 12.0).exp();
        assert!((e.target / (psi1 / 12.0).exp() - t).abs() < 1e-14);
        assert!(e.lower.unwrap() < e.target && e.target < e.upper.unwrap());
        assert!(evaluate_bound(&bound("integer_asymptotic").unwrap(), 1.5).is_err());
    }

    #[test]
    fn invalid_specs() {
        assert!(load_catalog(r#"[{"name":"z","target":"h","domain":{"lo":0,"lo_open":true},"provenance":""}]"#).is_err());
        assert!(load_catalog(r#"[{"name":"z","target":"h","upper":"q","domain":{"lo":0,"lo_open":true},"provenance":""}]"#)
            .is_err());
    }

    #[test]
    fn csv_header() {
        let s = bound("h_constants").unwrap();
        let rows = vec![BoundRow::new(&s, &evaluate_bound(&s, 1.0).unwrap())];
        let mut buf = Vec::new();
        write_csv(&rows, true, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("spec,x,lower,target,upper,margin\nh_constants,1.0,"));
    }
}
