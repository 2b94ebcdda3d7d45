use serde::{Deserialize, Serialize};

use super::{budget, BoundSpec};
use crate::error::{Error, Result};
use crate::gamma_ref::EvalPrecision;
use crate::monotonicity::Grid;
use crate::scalar::Dd;

const SCAN_POINTS: usize = 512;
const BRACKET_WIDTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "lower" => Ok(Side::Lower),
            "upper" => Ok(Side::Upper),
            _ => Err(Error::Unknown { kind: "side", name: s.into() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WinnerInterval {
    pub lo: f64,
    pub hi: f64,
    /// Spec name of the tighter side, or `"tie"`.
    pub winner: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub spec_a: String,
    pub spec_b: String,
    pub side: Side,
    pub lo: f64,
    pub hi: f64,
    /// Midpoints of the crossover brackets.
    pub crossovers: Vec<f64>,
    pub brackets: Vec<(f64, f64)>,
    pub intervals: Vec<WinnerInterval>,
    /// Winner at the right end of the range.
    pub asymptotic_winner: String,
    /// `a / b` at the right end.
    pub right_edge_ratio: f64,
}

/// Which spec gives the tighter `side` on the range of `grid`, with crossovers
/// located by a 512-point log scan and bisection.
pub fn compare_bounds(a: &BoundSpec, b: &BoundSpec, side: Side, grid: &Grid) -> Result<ComparisonResult> {
    if a.target != b.target {
        return Err(Error::Incompatible(a.name.clone(), b.name.clone()));
    }
    let (lo, hi) = (grid.start, grid.last(0));
    if !(lo > 0.0) || !(hi > lo) {
        return Err(Error::Parameter(format!("comparison range [{lo}, {hi}] must be positive and nonempty")));
    }
    let p = EvalPrecision::default();
    let value = |s: &BoundSpec, x: f64| -> Result<Dd> {
        s.check_x(x)?;
        s.side(side, Dd::from_f64(x), &p)?
            .ok_or_else(|| Error::Parameter(format!("{} has no {side:?} side", s.name).to_lowercase()))
    };
    // +1 when a is tighter, -1 when b is, 0 within rounding
    let sign = |x: f64| -> Result<(i8, f64)> {
        let (va, vb) = (value(a, x)?, value(b, x)?);
        let d = (va - vb).hi();
        let d = if side == Side::Upper { -d } else { d };
        let s = if d.abs() <= budget(va.hi().max(vb.hi())) { 0 } else { d.signum() as i8 };
        Ok((s, (va / vb).hi()))
    };
    let ratio = (hi / lo).ln();
    let xs: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| if i + 1 == SCAN_POINTS { hi } else { lo * (ratio * i as f64 / (SCAN_POINTS - 1) as f64).exp() })
        .collect();
    let signs = xs.iter().map(|&x| sign(x).map(|s| s.0)).collect::<Result<Vec<i8>>>()?;
    let name = |s: i8| match s {
        1 => a.name.clone(),
        -1 => b.name.clone(),
        _ => "tie".to_string(),
    };
    let mut brackets = Vec::new();
    let mut intervals = Vec::new();
    let mut start = lo;
    for i in 1..xs.len() {
        if signs[i] == signs[i - 1] {
            continue;
        }
        let (mut l, mut r) = (xs[i - 1], xs[i]);
        let sl = signs[i - 1];
        while r - l > BRACKET_WIDTH {
            let m = 0.5 * (l + r);
            if sign(m)?.0 == sl {
                l = m;
            } else {
                r = m;
            }
        }
        brackets.push((l, r));
        intervals.push(WinnerInterval { lo: start, hi: 0.5 * (l + r), winner: name(sl) });
        start = 0.5 * (l + r);
    }
    let last = *signs.last().expect("nonempty scan");
    intervals.push(WinnerInterval { lo: start, hi, winner: name(last) });
    Ok(ComparisonResult {
        spec_a: a.name.clone(),
        spec_b: b.name.clone(),
        side,
        lo,
        hi,
        crossovers: brackets.iter().map(|&(l, r)| 0.5 * (l + r)).collect(),
        brackets,
        intervals,
        asymptotic_winner: name(last),
        right_edge_ratio: sign(hi)?.1,
    })
}

#[cfg(test)]
mod tests {
    use super::super::bound;
    use super::*;

    #[test]
    fn self_comparison_is_a_tie() {
        let s = bound("trigamma_double").unwrap();
        let r = compare_bounds(&s, &s, Side::Upper, &Grid::spanning(0.5, 10.0, 8).unwrap()).unwrap();
        assert!(r.crossovers.is_empty());
        assert_eq!(r.asymptotic_winner, "tie");
        assert_eq!(r.right_edge_ratio, 1.0);
    }

    #[test]
    fn incompatible_targets() {
        let g = Grid::spanning(0.5, 10.0, 8).unwrap();
        let r = compare_bounds(&bound("trigamma_double").unwrap(), &bound("h_constants").unwrap(), Side::Upper, &g);
        assert!(matches!(r, Err(Error::Incompatible(..))));
    }

    #[test]
    fn sides_parse() {
        assert_eq!("upper".parse::<Side>().unwrap(), Side::Upper);
        assert!("both".parse::<Side>().is_err());
    }
}
