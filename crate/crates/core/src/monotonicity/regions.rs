//! Sign and monotonicity regions of `Λ_{p,q}` and `Φ_{p,q}`.

use serde::{Deserialize, Serialize};

use super::{sample, tolerance, Grid};
use crate::error::{Error, Result};
use crate::gamma_ref::{lambda, phi, EvalPrecision};
use crate::scalar::{Dd, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionFamily {
    Lambda,
    Phi,
}

impl std::str::FromStr for RegionFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lambda" => Ok(RegionFamily::Lambda),
            "phi" => Ok(RegionFamily::Phi),
            _ => Err(Error::Unknown { kind: "region family", name: s.into() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionClaim {
    PositiveDecreasing,
    NegativeIncreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub family: RegionFamily,
    /// Sub-region label such as `1b` or `3c`.
    pub label: &'static str,
    pub claim: RegionClaim,
}

const EQ_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQ_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Every listed sub-region containing `(p, q)`.
pub fn classify(family: RegionFamily, p: f64, q: f64) -> Vec<Region> {
    use RegionClaim::*;
    let p2 = p * p;
    let cands: Vec<(&'static str, RegionClaim, bool)> = match family {
        RegionFamily::Lambda => vec![
            ("1a", PositiveDecreasing, q <= 0.0),
            ("1b", PositiveDecreasing, p > 0.0 && p < 1.0 && p * q <= 1.0),
            ("1c", PositiveDecreasing, q > 0.0 && close(q, 1.0 / p2) && q <= 1.0 + EQ_TOL),
            ("2a", NegativeIncreasing, p >= 1.0 && p * q >= 1.0),
            ("2b", NegativeIncreasing, close(q, 1.0 / p2) && q >= 1.0 - EQ_TOL),
        ],
        RegionFamily::Phi => vec![
            ("3a", PositiveDecreasing, p >= 1.0 && q <= 0.0),
            ("3b", PositiveDecreasing, p > 0.0 && p < 1.0 && q <= 1.0),
            ("3c", PositiveDecreasing, p2 * q < 1.0 && q * (p2 - 1.0) * ((1.0 + 3.0 * q) * p2 - 4.0) <= 0.0),
            ("3d", PositiveDecreasing, close(p2 * q, 1.0) && q > 0.0 && q <= 1.0 + EQ_TOL),
            ("4a", NegativeIncreasing, 4.0 <= p2 * (1.0 + 3.0 * q) && p2 * (1.0 + 3.0 * q) <= 1.0 + 3.0 * q),
            ("4b", NegativeIncreasing, p > 1.0 && q >= 1.0),
        ],
    };
    cands.into_iter().filter(|c| c.2).map(|(label, claim, _)| Region { family, label, claim }).collect()
}

/// One `(p, q)` per sub-region, checked by [`check_region_claims`].
pub fn region_representatives() -> Vec<(RegionFamily, &'static str, f64, f64)> {
    use RegionFamily::*;
    vec![
        (Lambda, "1a", 2.0, -1.0),
        (Lambda, "1b", 0.5, 1.0),
        (Lambda, "1c", 2.0, 0.25),
        (Lambda, "2a", 2.0, 1.0),
        (Lambda, "2b", 0.5, 4.0),
        (Phi, "3a", 2.0, -1.0),
        (Phi, "3b", 0.5, 1.0),
        (Phi, "3c", 1.5, 0.1),
        (Phi, "3d", 2.0, 0.25),
        (Phi, "4a", 0.9, 2.0),
        (Phi, "4b", 2.0, 1.0),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub family: RegionFamily,
    pub p: f64,
    pub q: f64,
    pub regions: Vec<String>,
    /// `None` when no region applies or the applicable regions disagree.
    pub claim: Option<RegionClaim>,
    pub min_value: f64,
    pub max_value: f64,
    pub sign_ok: bool,
    pub monotone_ok: bool,
    /// `None` for unclassified parameters: tested, not asserted.
    pub holds: Option<bool>,
}

/// Classifies `(p, q)` and tests the sign and first differences on `grid`.
pub fn check_region_claims(family: RegionFamily, p: f64, q: f64, grid: &Grid) -> Result<RegionReport> {
    if !(p > 0.0) || !q.is_finite() {
        return Err(Error::Parameter(format!("need p > 0 and finite q, got p={p} q={q}")));
    }
    if !(grid.start > 0.0) {
        return Err(crate::error::domain("region grid start", grid.start));
    }
    let regions = classify(family, p, q);
    let claim = match regions.first() {
        Some(r) if regions.iter().all(|s| s.claim == r.claim) => Some(r.claim),
        _ => None,
    };
    let prec = EvalPrecision::default();
    let (pd, qd) = (Dd::from_f64(p), Dd::from_f64(q));
    let f = move |x: Dd| -> Result<Dd> {
        Ok(match family {
            RegionFamily::Lambda => lambda(pd * x, &prec)? - qd * lambda(x, &prec)?,
            RegionFamily::Phi => phi(pd * x, &prec)? - qd * phi(x, &prec)?,
        })
    };
    let vals: Vec<Dd> = sample(&f, &grid.points_in(0))?;
    let eps = Dd::epsilon();
    let min_value = vals.iter().map(|v| v.hi()).fold(f64::INFINITY, f64::min);
    let max_value = vals.iter().map(|v| v.hi()).fold(f64::NEG_INFINITY, f64::max);
    let (sign_ok, monotone_ok) = match claim {
        Some(c) => {
            let s = if c == RegionClaim::PositiveDecreasing { 1.0 } else { -1.0 };
            let sign_ok = vals.iter().all(|v| s * v.hi() > 0.0);
            let monotone_ok = vals.windows(2).all(|w| {
                let tol = tolerance(1, eps, w[0].hi().abs().max(w[1].hi().abs()));
                -s * (w[1] - w[0]).hi() >= -tol
            });
            (sign_ok, monotone_ok)
        }
        None => (false, false),
    };
    Ok(RegionReport {
        family,
        p,
        q,
        regions: regions.iter().map(|r| r.label.to_string()).collect(),
        claim,
        min_value,
        max_value,
        sign_ok,
        monotone_ok,
        holds: claim.map(|_| sign_ok && monotone_ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let l = classify(RegionFamily::Lambda, 0.5, 1.0);
        assert_eq!(l[0].label, "1b");
        assert_eq!(classify(RegionFamily::Lambda, 2.0, 1.0)[0].claim, RegionClaim::NegativeIncreasing);
        assert_eq!(classify(RegionFamily::Phi, 2.0, -1.0)[0].label, "3a");
        for (fam, label, p, q) in region_representatives() {
            assert!(classify(fam, p, q).iter().any(|r| r.label == label), "{label}");
        }
    }

    #[test]
    fn every_representative_holds() {
        let grid = Grid::spanning(0.1, 20.0, 64).unwrap();
        for (fam, label, p, q) in region_representatives() {
            let r = check_region_claims(fam, p, q, &grid).unwrap();
            assert_eq!(r.holds, Some(true), "{label}: {r:?}");
        }
    }

    #[test]
    fn unclassified_is_not_asserted() {
        let grid = Grid::spanning(0.1, 20.0, 8).unwrap();
        let r = check_region_claims(RegionFamily::Lambda, 0.5, 3.0, &grid).unwrap();
        assert!(r.regions.is_empty() && r.holds.is_none());
        assert!(check_region_claims(RegionFamily::Phi, 0.0, 1.0, &grid).is_err());
    }
}
