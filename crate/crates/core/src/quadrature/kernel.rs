use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::expoly::ExpPoly;
use crate::gamma_ref::bernoulli;
use crate::gamma_ref::Interval;
use crate::scalar::{Dd, Real};
use crate::ser::rational_str;
use crate::Rational;

/// Terms kept in the power series used below the cutoff.
pub const SERIES_TERMS: usize = 12;
/// Default near-zero cutoff `t0`.
pub const NEAR_ZERO_CUTOFF: f64 = 1.0 / 32.0;

/// `N(t) / (t^a (e^{2t} - 1)^b)` with weight `e^{-(x_scale x + shift) t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinhPow {
    pub numerator: ExpPoly,
    pub a: u32,
    pub b: u32,
    #[serde(with = "rational_str")]
    pub prefactor: Rational,
    #[serde(with = "rational_str")]
    pub x_scale: Rational,
    #[serde(with = "rational_str")]
    pub shift: Rational,
}

/// Kernel families, as they appear in a manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum KernelSpec {
    /// `(1/(e^t - 1) - 1/t + 1/2) / t`, weight `e^{-xt}`.
    BinetTheta,
    /// `(1 - e^t/(2t) + 1/(e^{2t} - 1)) / t`, weight `e^{-2(x+1)t}`.
    BurnsideB,
    /// `(2 - (t^2 + 2t + 2) e^{-t}) / t^3`, weight `e^{-xt}`.
    Entry46,
    /// `t / (e^{2πt} - 1)`, weight `1/(t^2 + x^2)`.
    LambdaGr,
    /// `t / (e^{πt} + 1)`, weight `1/(t^2 + 4x^2)`.
    PhiMagnus,
    ExpolyOverSinhpow(SinhPow),
}

impl KernelSpec {
    pub fn family(&self) -> &'static str {
        match self {
            KernelSpec::BinetTheta => "binet_theta",
            KernelSpec::BurnsideB => "burnside_b",
            KernelSpec::Entry46 => "entry46",
            KernelSpec::LambdaGr => "lambda_gr",
            KernelSpec::PhiMagnus => "phi_magnus",
            KernelSpec::ExpolyOverSinhpow(_) => "expoly_over_sinhpow",
        }
    }

    pub fn from_family(name: &str) -> Result<KernelSpec> {
        Ok(match name {
            "binet_theta" => KernelSpec::BinetTheta,
            "burnside_b" => KernelSpec::BurnsideB,
            "entry46" => KernelSpec::Entry46,
            "lambda_gr" => KernelSpec::LambdaGr,
            "phi_magnus" => KernelSpec::PhiMagnus,
            _ => return Err(Error::Unknown { kind: "kernel family", name: name.into() }),
        })
    }
}

/// One piece `c t^m e^{-beta t}` of a tail envelope valid for `t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeTerm {
    pub c: f64,
    pub m: i32,
    pub beta: f64,
}

/// An integrand family with its cancellation-free series at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelSpec", into = "KernelSpec")]
pub struct Kernel {
    spec: KernelSpec,
    near_zero_cutoff: f64,
    near_zero_series: Vec<Dd>,
}

impl TryFrom<KernelSpec> for Kernel {
    type Error = Error;
    fn try_from(spec: KernelSpec) -> Result<Kernel> {
        Kernel::new(spec)
    }
}

impl From<Kernel> for KernelSpec {
    fn from(k: Kernel) -> KernelSpec {
        k.spec
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * q(k as i64, 1))
}

fn dd_rational(v: &[Rational]) -> Vec<Dd> {
    v.iter().map(Dd::from_rational).collect()
}

/// `sum_j c_j (scale t)^j / scale`: Bernoulli-type series with a transcendental scale.
fn scaled_series(c: &[Rational], scale: Dd) -> Vec<Dd> {
    let mut pw = scale.recip();
    c.iter()
        .map(|cj| {
            let v = Dd::from_rational(cj) * pw;
            pw *= scale;
            v
        })
        .collect()
}

fn mul_series(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn inv_series(a: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    out[0] = Rational::one() / &a[0];
    for k in 1..n {
        let mut s = Rational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out[k] = -s * &out[0];
    }
    out
}

fn sinhpow_series(s: &SinhPow, n: usize) -> Result<Vec<Rational>> {
    let order = (s.a + s.b) as usize;
    let num = s.numerator.taylor_coeffs(order + n);
    if let Some(i) = num[..order].iter().position(|c| !c.is_zero()) {
        return Err(Error::Parameter(format!(
            "numerator has a nonzero t^{i} coefficient; the kernel is unbounded at 0 (needs order {order})"
        )));
    }
    // (e^{2t} - 1) / (2t) = sum 2^j t^j / (j+1)!
    let base: Vec<Rational> = (0..n).map(|j| q(1 << j, 1) / factorial(j + 1)).collect();
    let mut pow = vec![Rational::one()];
    for _ in 0..s.b {
        pow = mul_series(&pow, &base, n);
    }
    let inv = inv_series(&pow, n);
    let scale = &s.prefactor / q(1 << s.b, 1);
    Ok(mul_series(&num[order..], &inv, n).into_iter().map(|c| c * &scale).collect())
}

fn series_for(spec: &KernelSpec, n: usize) -> Result<Vec<Dd>> {
    let b = |k: usize| bernoulli(k);
    Ok(match spec {
        KernelSpec::BinetTheta => dd_rational(&(0..n).map(|j| b(j + 2) / factorial(j + 2)).collect::<Vec<_>>()),
        KernelSpec::BurnsideB => dd_rational(
            &(0..n)
                .map(|j| (b(j + 2) * q(1 << (j + 2), 1) - Rational::one()) / (q(2, 1) * factorial(j + 2)))
                .collect::<Vec<_>>(),
        ),
        KernelSpec::Entry46 => {
            let d = |m: usize| {
                let sgn = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
                let mut v = q(2, 1) / factorial(m);
                if m >= 1 {
                    v -= q(2, 1) / factorial(m - 1);
                }
                if m >= 2 {
                    v += Rational::one() / factorial(m - 2);
                }
                sgn * v
            };
            dd_rational(&(0..n).map(|j| -d(j + 3)).collect::<Vec<_>>())
        }
        KernelSpec::LambdaGr => {
            let c: Vec<Rational> = (0..n).map(|j| b(j) / factorial(j)).collect();
            scaled_series(&c, Dd::PI * Dd::from_f64(2.0))
        }
        KernelSpec::PhiMagnus => {
            let c: Vec<Rational> = (0..n)
                .map(|j| if j == 0 { Rational::zero() } else { b(j) * (Rational::one() - q(1 << j, 1)) / factorial(j) })
                .collect();
            scaled_series(&c, Dd::PI)
        }
        KernelSpec::ExpolyOverSinhpow(s) => dd_rational(&sinhpow_series(s, n)?),
    })
}

fn horner(c: &[Dd], t: Dd) -> Dd {
    c.iter().rev().fold(Dd::ZERO, |acc, &v| acc * t + v)
}

/// `1 / (e^{ct} - 1)` written as `e^{-ct} / (1 - e^{-ct})`.
fn inv_expm1(c: f64, t: Dd) -> Dd {
    let e = (-(Dd::from_f64(c) * t)).exp();
    e / -(-(Dd::from_f64(c) * t)).exp_m1()
}

impl Kernel {
    pub fn new(spec: KernelSpec) -> Result<Kernel> {
        Kernel::with_cutoff(spec, NEAR_ZERO_CUTOFF)
    }

    pub fn with_cutoff(spec: KernelSpec, cutoff: f64) -> Result<Kernel> {
        if !(cutoff > 0.0 && cutoff <= 0.25) {
            return Err(Error::Parameter(format!("near-zero cutoff {cutoff} outside (0, 1/4]")));
        }
        if let KernelSpec::ExpolyOverSinhpow(s) = &spec {
            if !s.x_scale.is_positive() {
                return Err(Error::Parameter("x_scale must be positive".into()));
            }
            if s.prefactor.is_zero() {
                return Err(Error::Parameter("prefactor must be nonzero".into()));
            }
        }
        let near_zero_series = series_for(&spec, SERIES_TERMS)?;
        Ok(Kernel { spec, near_zero_cutoff: cutoff, near_zero_series })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn family(&self) -> &'static str {
        self.spec.family()
    }

    pub fn near_zero_cutoff(&self) -> f64 {
        self.near_zero_cutoff
    }

    pub fn near_zero_series(&self) -> &[Dd] {
        &self.near_zero_series
    }

    /// `K(0+)`.
    pub fn limit_at_zero(&self) -> Dd {
        self.near_zero_series[0]
    }

    /// Decay rate of the exponential weight, `None` for the rational weights.
    pub fn weight_rate(&self, x: Dd) -> Option<Dd> {
        match &self.spec {
            KernelSpec::BinetTheta | KernelSpec::Entry46 => Some(x),
            KernelSpec::BurnsideB => Some(Dd::from_f64(2.0) * (x + Dd::ONE)),
            KernelSpec::ExpolyOverSinhpow(s) => {
                Some(Dd::from_rational(&s.x_scale) * x + Dd::from_rational(&s.shift))
            }
            KernelSpec::LambdaGr | KernelSpec::PhiMagnus => None,
        }
    }

    /// Values of `x` for which the integral converges.
    pub fn domain(&self) -> Interval {
        match &self.spec {
            KernelSpec::BurnsideB => Interval::open(-0.5),
            KernelSpec::ExpolyOverSinhpow(s) => {
                // the integrand behaves like e^{(top - 2b - rate) t} at infinity
                let top = s.numerator.max_degree().unwrap_or(0) as f64;
                let need = (top - 2.0 * s.b as f64).max(0.0);
                let lo = (need - Real::as_f64(Dd::from_rational(&s.shift))) / Real::as_f64(Dd::from_rational(&s.x_scale));
                Interval::open(lo)
            }
            _ => Interval::open(0.0),
        }
    }

    pub fn check_x(&self, x: f64) -> Result<()> {
        if self.domain().contains(x) {
            Ok(())
        } else {
            Err(domain(format!("{} kernel", self.family()), x))
        }
    }

    fn direct(&self, t: Dd, rate: Dd) -> Dd {
        let two = Dd::from_f64(2.0);
        match &self.spec {
            KernelSpec::BinetTheta => {
                (inv_expm1(1.0, t) - t.recip() + Dd::from_f64(0.5)) * (-(rate * t)).exp() / t
            }
            KernelSpec::BurnsideB => {
                let w = (-(rate * t)).exp();
                let grow = (-(rate - Dd::ONE) * t).exp() / (two * t);
                (w - grow + w * inv_expm1(2.0, t)) / t
            }
            KernelSpec::Entry46 => {
                let p = t * t + two * t + two;
                (two * (-(rate * t)).exp() - p * (-((rate + Dd::ONE) * t)).exp()) / (t * t * t)
            }
            KernelSpec::LambdaGr => t * inv_expm1(2.0 * std::f64::consts::PI, t),
            KernelSpec::PhiMagnus => {
                let e = (-(Dd::PI * t)).exp();
                t * e / (Dd::ONE + e)
            }
            KernelSpec::ExpolyOverSinhpow(s) => {
                let shift = Dd::from_f64(2.0 * s.b as f64) + rate;
                let mut acc = Dd::ZERO;
                for (&k, p) in s.numerator.terms() {
                    acc += p.eval(t) * ((Dd::from_f64(k as f64) - shift) * t).exp();
                }
                let den = t.powi(s.a as i32) * (-(-(two * t)).exp_m1()).powi(s.b as i32);
                Dd::from_rational(&s.prefactor) * acc / den
            }
        }
    }

    fn rational_weight(&self, x: Dd, t: Dd) -> Dd {
        match &self.spec {
            KernelSpec::LambdaGr => (t * t + x * x).recip(),
            KernelSpec::PhiMagnus => (t * t + Dd::from_f64(4.0) * x * x).recip(),
            _ => Dd::ONE,
        }
    }

    /// Kernel times weight at `t > 0`, in double-double.
    pub fn integrand(&self, x: Dd, t: Dd) -> Dd {
        let rate = self.weight_rate(x);
        if t.hi() < self.near_zero_cutoff {
            let k = horner(&self.near_zero_series, t);
            match rate {
                Some(r) => k * (-(r * t)).exp(),
                None => k * self.rational_weight(x, t),
            }
        } else {
            match rate {
                Some(r) => self.direct(t, r),
                None => self.direct(t, Dd::ZERO) * self.rational_weight(x, t),
            }
        }
    }

    /// `K(t)` without the weight. Large `t` may saturate to infinity for the
    /// Burnside kernel, whose factor `e^t/(2t^2)` grows.
    pub fn kernel_value(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(domain(format!("{} kernel argument", self.family()), t));
        }
        let t = Dd::from_f64(t);
        let v = if t.hi() < self.near_zero_cutoff {
            horner(&self.near_zero_series, t)
        } else {
            self.direct(t, Dd::ZERO)
        };
        Ok(v.hi())
    }

    /// Direct formula without the series switch; loses accuracy near 0.
    pub fn kernel_direct(&self, t: Dd) -> Dd {
        self.direct(t, Dd::ZERO)
    }

    /// Series evaluation regardless of `t`.
    pub fn kernel_series(&self, t: Dd) -> Dd {
        horner(&self.near_zero_series, t)
    }

    /// Pieces of `|K(t) w(x,t)| <= sum c t^m e^{-beta t}` for `t >= 1`.
    pub fn envelope(&self, x: f64) -> Vec<EnvelopeTerm> {
        let e2 = 1.0 - (-2.0f64).exp();
        match &self.spec {
            KernelSpec::BinetTheta => vec![EnvelopeTerm { c: 0.5, m: -1, beta: x }],
            KernelSpec::BurnsideB => vec![
                EnvelopeTerm { c: 1.0 / e2, m: -1, beta: 2.0 * (x + 1.0) },
                EnvelopeTerm { c: 0.5, m: -2, beta: 2.0 * x + 1.0 },
            ],
            KernelSpec::Entry46 => vec![EnvelopeTerm { c: 2.0, m: -3, beta: x }],
            KernelSpec::LambdaGr => vec![EnvelopeTerm {
                c: 1.0 / (1.0 - (-2.0 * std::f64::consts::PI).exp()),
                m: -1,
                beta: 2.0 * std::f64::consts::PI,
            }],
            KernelSpec::PhiMagnus => vec![EnvelopeTerm { c: 1.0, m: -1, beta: std::f64::consts::PI }],
            KernelSpec::ExpolyOverSinhpow(s) => {
                let rate = self.weight_rate(Dd::from_f64(x)).map_or(0.0, |r| r.hi());
                let pre = Real::as_f64(Dd::from_rational(&s.prefactor)).abs() / e2.powi(s.b as i32);
                let mut out = Vec::new();
                for (&k, p) in s.numerator.terms() {
                    for (i, c) in p.coeffs().iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        out.push(EnvelopeTerm {
                            c: pre * Real::as_f64(Dd::from_rational(&c.abs())),
                            m: i as i32 - s.a as i32,
                            beta: rate + 2.0 * s.b as f64 - k as f64,
                        });
                    }
                }
                out
            }
        }
    }
}

/// Upper bound on `|int_T^inf K(t) w(x,t) dt|`, nonincreasing in `T`.
pub fn tail_bound(k: &Kernel, x: f64, t: f64) -> Result<f64> {
    k.check_x(x)?;
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::Envelope { t, x });
    }
    let mut total = 0.0;
    for e in k.envelope(x) {
        let slope = e.beta - (e.m.max(0) as f64) / t;
        if !(slope > 0.0) {
            return Err(Error::Envelope { t, x });
        }
        // t^m e^{-beta t} has logarithmic derivative m/t - beta <= -slope past T
        total += e.c * t.powi(e.m) * (-e.beta * t).exp() / slope;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expoly::catalog;

    fn kern(spec: KernelSpec) -> Kernel {
        Kernel::new(spec).unwrap()
    }

    #[test]
    fn limits_at_zero() {
        let b = kern(KernelSpec::BinetTheta).limit_at_zero();
        assert!((b - Dd::ONE / Dd::from_f64(12.0)).abs().hi() < 1e-31);
        let bb = kern(KernelSpec::BurnsideB).limit_at_zero();
        assert!((bb + Dd::ONE / Dd::from_f64(12.0)).abs().hi() < 1e-31);
        let e = kern(KernelSpec::Entry46).limit_at_zero();
        assert!((e - Dd::ONE / Dd::from_f64(3.0)).abs().hi() < 1e-31);
        let l = kern(KernelSpec::LambdaGr).limit_at_zero();
        assert!((l - (Dd::from_f64(2.0) * Dd::PI).recip()).abs().hi() < 1e-31);
        assert_eq!(kern(KernelSpec::PhiMagnus).limit_at_zero(), Dd::ZERO);
    }

    #[test]
    fn entry46_at_one() {
        let v = kern(KernelSpec::Entry46).kernel_value(1.0).unwrap();
        assert!((v - (2.0 - 5.0 / std::f64::consts::E)).abs() < 1e-15);
        assert!((v - 0.160603).abs() < 1e-6);
    }

    #[test]
    fn rejects_nonpositive_t() {
        let k = kern(KernelSpec::BinetTheta);
        assert!(k.kernel_value(0.0).is_err());
        assert!(k.kernel_value(-1.0).is_err());
    }

    #[test]
    fn unbounded_numerator_rejected() {
        let s = SinhPow {
            numerator: crate::expoly::parse_expoly("E^(4t)").unwrap(),
            a: 3,
            b: 2,
            prefactor: Rational::one(),
            x_scale: q(2, 1),
            shift: Rational::one(),
        };
        assert!(Kernel::new(KernelSpec::ExpolyOverSinhpow(s)).is_err());
    }

    #[test]
    fn series_matches_direct_at_twice_cutoff() {
        let mut specs = vec![
            KernelSpec::BinetTheta,
            KernelSpec::BurnsideB,
            KernelSpec::Entry46,
            KernelSpec::LambdaGr,
            KernelSpec::PhiMagnus,
        ];
        for (name, a, b) in [("f1", 3, 2), ("h4", 5, 4)] {
            specs.push(KernelSpec::ExpolyOverSinhpow(SinhPow {
                numerator: catalog::named(name).unwrap(),
                a,
                b,
                prefactor: Rational::one(),
                x_scale: q(2, 1),
                shift: Rational::one(),
            }));
        }
        for s in specs {
            let k = kern(s);
            let t = Dd::from_f64(2.0 * NEAR_ZERO_CUTOFF);
            let (a, b) = (k.kernel_series(t), k.kernel_direct(t));
            assert!(((a - b) / b).abs().hi() < 1e-13, "{}", k.family());
        }
    }

    #[test]
    fn tail_bound_shape() {
        let k = kern(KernelSpec::BurnsideB);
        assert!(tail_bound(&k, 1.0, 50.0).unwrap() <= 1e-30);
        let edge = tail_bound(&k, -0.49, 10.0).unwrap();
        assert!(edge.is_finite() && edge > 0.0);
        assert!(tail_bound(&k, 1.0, 0.5).is_err());
        assert!(tail_bound(&k, -0.6, 10.0).is_err());
    }
}
