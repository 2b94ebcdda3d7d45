//! Finite-difference evidence for complete and logarithmically complete
//! monotonicity.
//!
//! A completely monotonic `f` satisfies `(-1)^n Δ_h^n f(x) >= 0` for every
//! `h > 0`. A negative value beyond the rounding budget is therefore a
//! witness against the claim; nonnegative values are evidence only.

mod claims;
mod regions;

use std::io::Write;

use num_traits::Num;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use claims::{
    big_f_third_derivative, h_lambda_scan, theorem1_claims, theorem2_claims, witness_claims, Claim, ClaimKind,
    ClaimOutcome, Expectation,
};
pub use regions::{
    check_region_claims, classify, region_representatives, Region, RegionClaim, RegionFamily, RegionReport,
};

use crate::error::{Error, Result};
use crate::gamma_ref::Interval;
use crate::scalar::Real;

pub const REPORT_SCHEMA: u32 = 1;
/// Highest order the precision budget supports.
pub const MAX_ORDER: u32 = 10;
/// A failure this many tolerances deep is flagged as a counterexample candidate.
pub const FLAG_FACTOR: f64 = 10.0;

/// Equispaced points `start + i h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
    /// Distance kept from an open left endpoint.
    pub open_left_margin: f64,
}

impl Grid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Grid> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() || count == 0 {
            return Err(Error::Parameter(format!("bad grid start={start} step={step} count={count}")));
        }
        Ok(Grid { start, step, count, open_left_margin: 0.0 })
    }

    /// Grid starting `margin` to the right of the domain's left endpoint.
    pub fn on(domain: Interval, margin: f64, step: f64, count: usize) -> Result<Grid> {
        if !(margin >= 0.0) {
            return Err(Error::Parameter(format!("margin {margin} must be >= 0")));
        }
        let mut g = Grid::new(domain.lo + margin, step, count)?;
        g.open_left_margin = margin;
        Ok(g)
    }

    /// `count` points spread over `[lo, hi]` with room for no extra stencil.
    pub fn spanning(lo: f64, hi: f64, count: usize) -> Result<Grid> {
        if count < 2 || !(hi > lo) {
            return Err(Error::Parameter(format!("cannot span [{lo}, {hi}] with {count} points")));
        }
        Grid::new(lo, (hi - lo) / (count - 1) as f64, count)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    /// The `count` base points plus `extra` stencil points.
    pub fn points(&self, extra: usize) -> Vec<f64> {
        (0..self.count + extra).map(|i| self.point(i)).collect()
    }

    /// [`Grid::points`] formed in `T`, so the spacing carries no `f64` rounding.
    pub fn points_in<T: Real>(&self, extra: usize) -> Vec<T> {
        let (start, step) = (T::of(self.start), T::of(self.step));
        (0..self.count + extra).map(|i| start + T::of(i as f64) * step).collect()
    }

    pub fn last(&self, extra: usize) -> f64 {
        self.point(self.count - 1 + extra)
    }

    pub fn check_within(&self, domain: &Interval, extra: usize) -> Result<()> {
        if !domain.contains(self.start) || self.start < domain.lo + self.open_left_margin {
            return Err(crate::error::domain(format!("grid start in {domain}"), self.start));
        }
        let end = self.last(extra);
        if !end.is_finite() {
            return Err(crate::error::domain("grid end", end));
        }
        Ok(())
    }
}

/// Rows `Δ^0 .. Δ^n` of forward differences of `values`; row `k` has
/// `values.len() - k` entries. Exact for exact types.
pub fn finite_difference_table<T: Num + Clone>(values: &[T], n: usize) -> Vec<Vec<T>> {
    let mut rows = vec![values.to_vec()];
    for k in 1..=n.min(values.len().saturating_sub(1)) {
        let prev = &rows[k - 1];
        let next: Vec<T> = prev.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        rows.push(next);
    }
    rows
}

/// Evaluates `f` on every grid point in parallel; the result order is the grid order.
pub fn sample<T: Real>(f: &(dyn Fn(T) -> Result<T> + Sync), points: &[T]) -> Result<Vec<T>> {
    points.par_iter().map(|&x| f(x)).collect()
}

/// Rounding budget for `Δ^n`: `8 * 2^n * eps * max|f|` over the stencil.
pub fn tolerance(n: u32, eps: f64, max_abs: f64) -> f64 {
    8.0 * 2f64.powi(n as i32) * eps * max_abs
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderResult {
    pub order: u32,
    /// `min_x (-1)^n sign Δ^n f(x)`.
    pub min_value: f64,
    pub at_x: f64,
    /// Tolerance at the minimizing point.
    pub tolerance: f64,
    pub pass: bool,
    /// Largest `-value / tolerance` over the grid.
    pub worst_ratio: f64,
    pub counterexample_candidate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMReport {
    pub schema_version: u32,
    pub function: String,
    /// `"cm"` or `"lcm"`.
    pub kind: String,
    pub grid: Grid,
    pub max_order: u32,
    pub sign: i8,
    pub epsilon: f64,
    pub orders: Vec<OrderResult>,
}

impl CMReport {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(|o| o.pass)
    }

    pub fn flagged(&self) -> bool {
        self.orders.iter().any(|o| o.counterexample_candidate)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.orders.iter().find(|o| !o.pass).map(|o| o.order)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per order.
    pub fn write_csv(&self, header: bool, w: impl Write) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            function: &'a str,
            order: u32,
            min_value: f64,
            at_x: f64,
            tolerance: f64,
            pass: bool,
            counterexample_candidate: bool,
        }
        let mut out = csv::WriterBuilder::new().has_headers(header).from_writer(w);
        for o in &self.orders {
            out.serialize(Row {
                function: &self.function,
                order: o.order,
                min_value: o.min_value,
                at_x: o.at_x,
                tolerance: o.tolerance,
                pass: o.pass,
                counterexample_candidate: o.counterexample_candidate,
            })?;
        }
        out.flush()?;
        Ok(())
    }
}

fn check_max_order(max_order: u32) -> Result<()> {
    if max_order > MAX_ORDER {
        return Err(Error::Parameter(format!("max_order {max_order} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

fn analyse<T: Real>(
    name: &str,
    kind: &str,
    values: &[T],
    grid: &Grid,
    orders: std::ops::RangeInclusive<u32>,
    max_order: u32,
    sign: i8,
) -> CMReport {
    let eps = T::epsilon();
    let table = finite_difference_table(values, max_order as usize);
    let mut out = Vec::new();
    for n in orders {
        let row = &table[n as usize];
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 } * sign as f64;
        let mut res = OrderResult {
            order: n,
            min_value: f64::INFINITY,
            at_x: grid.start,
            tolerance: 0.0,
            pass: true,
            worst_ratio: f64::NEG_INFINITY,
            counterexample_candidate: false,
        };
        // fixed left-to-right reduction keeps the report independent of threading
        for i in 0..grid.count {
            let v = parity * row[i].as_f64();
            let max_abs = values[i..=i + n as usize].iter().map(|y| y.as_f64().abs()).fold(0.0, f64::max);
            let tol = tolerance(n, eps, max_abs);
            if v < res.min_value {
                res.min_value = v;
                res.at_x = grid.point(i);
                res.tolerance = tol;
            }
            let ratio = if tol > 0.0 { -v / tol } else if v < 0.0 { f64::INFINITY } else { 0.0 };
            res.worst_ratio = res.worst_ratio.max(ratio);
            if v < -tol {
                res.pass = false;
            }
        }
        res.counterexample_candidate = res.worst_ratio > FLAG_FACTOR;
        out.push(res);
    }
    CMReport {
        schema_version: REPORT_SCHEMA,
        function: name.to_string(),
        kind: kind.to_string(),
        grid: *grid,
        max_order,
        sign,
        epsilon: eps,
        orders: out,
    }
}

/// Tests `(-1)^n Δ^n (sign f) >= -tolerance(n)` for `n = 0..=max_order`.
pub fn check_cm<T: Real>(
    name: &str,
    f: &(dyn Fn(T) -> Result<T> + Sync),
    grid: &Grid,
    max_order: u32,
    sign: i8,
) -> Result<CMReport> {
    check_max_order(max_order)?;
    if sign != 1 && sign != -1 {
        return Err(Error::Parameter(format!("sign must be +1 or -1, got {sign}")));
    }
    let values = sample(f, &grid.points_in(max_order as usize))?;
    Ok(analyse(name, "cm", &values, grid, 0..=max_order, max_order, sign))
}

/// LCM evidence from `ln f`: `(-1)^k Δ^k ln f >= -tolerance(k)` for `k = 1..=max_order`.
pub fn check_lcm_ln<T: Real>(
    name: &str,
    ln_f: &(dyn Fn(T) -> Result<T> + Sync),
    grid: &Grid,
    max_order: u32,
) -> Result<CMReport> {
    check_max_order(max_order)?;
    let values = sample(ln_f, &grid.points_in(max_order as usize))?;
    Ok(analyse(name, "lcm", &values, grid, 1..=max_order.max(1), max_order.max(1), 1))
}

/// [`check_lcm_ln`] for a function given directly; it must be positive on the stencil.
pub fn check_lcm<T: Real>(
    name: &str,
    f: &(dyn Fn(T) -> Result<T> + Sync),
    grid: &Grid,
    max_order: u32,
) -> Result<CMReport> {
    let ln_f = |x: T| {
        let v = f(x)?;
        if !(v > T::zero()) {
            return Err(Error::Domain { what: format!("{name} must be positive for LCM"), x: x.as_f64() });
        }
        Ok(v.ln())
    };
    check_lcm_ln(name, &ln_f, grid, max_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_ref::{b, EvalPrecision};
    use crate::scalar::Dd;
    use crate::Rational;

    fn g(start: f64, h: f64, n: usize) -> Grid {
        Grid::new(start, h, n).unwrap()
    }

    #[test]
    fn exp_minus_x_geometric() {
        let vals: Vec<f64> = (0..12).map(|i| (-(i as f64)).exp()).collect();
        let t = finite_difference_table(&vals, 6);
        for n in 0..=6 {
            let want = (1.0 - (-1f64).exp()).powi(n as i32);
            let got = if n % 2 == 0 { t[n][0] } else { -t[n][0] };
            assert!((got - want).abs() < 1e-14);
        }
        let r = check_cm::<f64>("exp(-x)", &|x: f64| Ok((-x).exp()), &g(0.0, 1.0, 16), 10, 1).unwrap();
        assert!(r.passed() && r.orders.iter().all(|o| o.min_value > 0.0));
    }

    #[test]
    fn exact_mode_constant() {
        let one = Rational::from_integer(1.into());
        let t = finite_difference_table(&vec![one; 5], 2);
        assert!(t[1].iter().chain(&t[2]).all(num_traits::Zero::is_zero));
    }

    #[test]
    fn identity_fails_at_order_one() {
        let r = check_cm::<f64>("x", &|x: f64| Ok(x), &g(1.0, 0.5, 8), 3, 1).unwrap();
        assert_eq!(r.first_failure(), Some(1));
        assert!(r.orders[0].pass && r.orders[1].counterexample_candidate);
    }

    #[test]
    fn b_needs_the_minus_sign() {
        let p = EvalPrecision::default();
        let f = |x: Dd| b(x, &p);
        let grid = g(0.5, 0.25, 16);
        assert!(check_cm("-b", &f, &grid, 4, -1).unwrap().passed());
        assert_eq!(check_cm("b", &f, &grid, 4, 1).unwrap().first_failure(), Some(0));
    }

    #[test]
    fn lcm_of_constant_and_nonpositive() {
        let r = check_lcm::<f64>("1", &|_| Ok(1.0), &g(0.1, 0.1, 10), 4).unwrap();
        assert!(r.passed() && r.orders[0].order == 1);
        assert!(check_lcm::<f64>("-1", &|_| Ok(-1.0), &g(0.1, 0.1, 10), 4).is_err());
    }

    #[test]
    fn guards() {
        assert!(check_cm::<f64>("x", &|x| Ok(x), &g(0.0, 1.0, 4), 11, 1).is_err());
        assert!(Grid::new(0.0, 0.0, 3).is_err());
        let r = check_cm::<f64>("e", &|x: f64| Ok((-x).exp()), &g(0.0, 1.0, 4), 2, 1).unwrap();
        let mut buf = Vec::new();
        r.write_csv(true, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
    }
}
