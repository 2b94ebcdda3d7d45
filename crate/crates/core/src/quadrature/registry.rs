//! The eight integral representations of `b(x)` and its corrections.

use num_bigint::BigInt;
use num_traits::One;

use super::kernel::{Kernel, KernelSpec, SinhPow};
use crate::error::{Error, Result};
use crate::expoly::catalog;
use crate::gamma_ref::{b, EvalPrecision, Interval};
use crate::scalar::Dd;
use crate::Rational;

/// `lhs(x) = int_0^inf K(t) w(x, t) dt` on `domain`.
#[derive(Debug, Clone)]
pub struct Representation {
    pub id: &'static str,
    pub item: u8,
    pub kernel: Kernel,
    pub domain: Interval,
    /// Left-hand side as text.
    pub lhs_text: &'static str,
    lhs: fn(Dd, Dd) -> Dd,
}

impl Representation {
    /// Left-hand side from the reference `b(x)`, evaluated in double-double.
    pub fn lhs(&self, x: f64) -> Result<f64> {
        Ok(self.lhs_dd(Dd::from_f64(x))?.hi())
    }

    pub fn lhs_dd(&self, x: Dd) -> Result<Dd> {
        if !self.domain.contains(x.hi()) {
            return Err(crate::error::domain(self.id, x.hi()));
        }
        let bx = b(x, &EvalPrecision::default())?;
        Ok((self.lhs)(x, bx))
    }
}

fn d(v: f64) -> Dd {
    Dd::from_f64(v)
}

fn frac(n: f64, m: f64) -> Dd {
    d(n) / d(m)
}

fn sinhpow(name: &str, a: u32, bb: u32, prefactor: i64) -> Kernel {
    let spec = SinhPow {
        numerator: catalog::named(name).expect("catalog numerator"),
        a,
        b: bb,
        prefactor: Rational::new(BigInt::one(), BigInt::from(prefactor)),
        x_scale: Rational::from_integer(BigInt::from(2)),
        shift: Rational::one(),
    };
    Kernel::new(KernelSpec::ExpolyOverSinhpow(spec)).expect("registry kernel is valid")
}

pub fn representations() -> Vec<Representation> {
    let pos = Interval::open(0.0);
    let half = Interval::open(-0.5);
    vec![
        Representation {
            id: "theorem1-item1",
            item: 1,
            kernel: Kernel::new(KernelSpec::BurnsideB).expect("valid"),
            domain: half,
            lhs_text: "b(x)",
            lhs: |_, b| b,
        },
        Representation {
            id: "theorem1-item2",
            item: 2,
            kernel: sinhpow("f1", 3, 2, 4),
            domain: pos,
            lhs_text: "x b(x) + 1/24",
            lhs: |x, b| x * b + frac(1.0, 24.0),
        },
        Representation {
            id: "theorem1-item3",
            item: 3,
            kernel: sinhpow("f2", 4, 3, 1),
            domain: pos,
            lhs_text: "1/6 - x/3 - 8x^2 b(x)",
            lhs: |x, b| frac(1.0, 6.0) - x / d(3.0) - d(8.0) * x * x * b,
        },
        Representation {
            id: "theorem1-item4",
            item: 4,
            kernel: sinhpow("f3", 5, 4, 1),
            domain: pos,
            lhs_text: "16x^3 b(x) + 2x^2/3 - x/3 + 23/180",
            lhs: |x, b| d(16.0) * x * x * x * b + d(2.0) * x * x / d(3.0) - x / d(3.0) + frac(23.0, 180.0),
        },
        Representation {
            id: "theorem1-item5",
            item: 5,
            kernel: sinhpow("h1", 3, 2, 1),
            domain: half,
            lhs_text: "(2x+1) b(x) + 1/12",
            lhs: |x, b| (d(2.0) * x + Dd::ONE) * b + frac(1.0, 12.0),
        },
        Representation {
            id: "theorem1-item6",
            item: 6,
            kernel: sinhpow("h2", 3, 2, 4),
            domain: half,
            lhs_text: "-(x+1) b(x) - 1/24",
            lhs: |x, b| -(x + Dd::ONE) * b - frac(1.0, 24.0),
        },
        Representation {
            id: "theorem1-item7",
            item: 7,
            kernel: sinhpow("h3", 4, 3, 8),
            domain: half,
            lhs_text: "-(x+1)^2 b(x) - x/24 - 1/16",
            lhs: |x, b| -(x + Dd::ONE).sqr() * b - x / d(24.0) - frac(1.0, 16.0),
        },
        Representation {
            id: "theorem1-item8",
            item: 8,
            kernel: sinhpow("h4", 5, 4, 16),
            domain: half,
            lhs_text: "-(x+1)^3 b(x) - x^2/24 - 5x/48 - 203/2880",
            lhs: |x, b| {
                -(x + Dd::ONE).powi(3) * b - x * x / d(24.0) - d(5.0) * x / d(48.0) - frac(203.0, 2880.0)
            },
        },
    ]
}

/// Looks up `theorem1-itemN` (or just `N`).
pub fn representation(id: &str) -> Result<Representation> {
    let key = id.strip_prefix("theorem1-item").unwrap_or(id);
    representations()
        .into_iter()
        .find(|r| r.item.to_string() == key)
        .ok_or_else(|| Error::Unknown { kind: "representation", name: id.into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_semiinfinite;

    #[test]
    fn every_item_matches_its_left_side() {
        for r in representations() {
            let pts: &[f64] = if r.domain.lo < 0.0 { &[-0.4, -0.25, 0.5, 1.0, 5.0] } else { &[0.25, 0.5, 1.0, 2.0, 5.0] };
            for &x in pts {
                let q = integrate_semiinfinite(&r.kernel, x, 1e-12).unwrap();
                let want = r.lhs(x).unwrap();
                assert!((q.value - want).abs() < 1e-9, "{} x={x}: {} vs {}", r.id, q.value, want);
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(representation("theorem1-item7").unwrap().item, 7);
        assert_eq!(representation("3").unwrap().item, 3);
        assert!(representation("theorem1-item9").is_err());
        assert!(representation("1").unwrap().lhs(-0.6).is_err());
    }
}
