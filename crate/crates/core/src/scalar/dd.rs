//! Double-double arithmetic.
//!
//! A [`Dd`] is the unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi) / 2`, which carries roughly 31 significant decimal digits.
//! The error-free transformations follow Dekker and Knuth; `two_prod` relies on
//! a fused multiply-add.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Multiply by `2^k` exactly, staying finite across the full exponent range.
fn ldexp(x: f64, k: i32) -> f64 {
    if (-1000..=1000).contains(&k) {
        x * 2f64.powi(k)
    } else {
        let half = k / 2;
        x * 2f64.powi(half) * 2f64.powi(k - half)
    }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    pub const E: Dd = Dd { hi: 2.718281828459045, lo: 1.4456468917292502e-16 };
    pub const LN_2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    pub const LN_10: Dd = Dd { hi: 2.302585092994046, lo: -2.1707562233822494e-16 };
    pub const LN_SQRT_2PI: Dd = Dd { hi: 0.9189385332046728, lo: -3.8782941580672414e-17 };
    pub const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };
    pub const EPSILON: f64 = 4.930380657631324e-32; // 2^-104

    /// Builds a normalized value from two arbitrary doubles.
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    pub fn abs(self) -> Dd {
        if self.is_sign_negative() {
            -self
        } else {
            self
        }
    }

    fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (h, l) = quick_two_sum(s1, s2);
        Dd { hi: h, lo: l }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (h, l) = quick_two_sum(p1, p2);
        Dd { hi: h, lo: l }
    }

    fn mul_pow2(self, k: i32) -> Dd {
        Dd { hi: ldexp(self.hi, k), lo: ldexp(self.lo, k) }
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        if !self.hi.is_finite() {
            return self;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = Dd::from_f64(self.hi * x);
        let corr = (self - ax.sqr()).hi * (x * 0.5);
        ax.add_f64(corr)
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn floor(self) -> Dd {
        let h = self.hi.floor();
        if h == self.hi {
            Dd::new(h, self.lo.floor())
        } else {
            Dd::from_f64(h)
        }
    }

    pub fn trunc(self) -> Dd {
        if self.is_sign_negative() {
            -((-self).floor())
        } else {
            self.floor()
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::from_f64(0.5)).floor()
    }

    /// `e^r - 1` for `|r| <= ln2/2`, by scaling down, a short Taylor sum and
    /// repeated doubling through `(1+s)^2 - 1 = 2s + s^2`.
    fn expm1_reduced(r: Dd) -> Dd {
        const SQUARINGS: i32 = 10;
        let r = r.mul_pow2(-SQUARINGS);
        let mut s = r;
        let mut term = r;
        for i in 2..=24 {
            term = term * r / Dd::from_f64(i as f64);
            s += term;
            if term.hi.abs() <= 1e-36 * s.hi.abs() {
                break;
            }
        }
        for _ in 0..SQUARINGS {
            s = s.mul_pow2(1) + s.sqr();
        }
        s
    }

    pub fn exp(self) -> Dd {
        if self.is_nan() {
            return self;
        }
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN_2.hi).round();
        let r = self - Dd::LN_2.mul_f64(k);
        let s = Dd::expm1_reduced(r) + Dd::ONE;
        s.mul_pow2(k as i32)
    }

    pub fn exp_m1(self) -> Dd {
        if self.hi.abs() <= 0.34 {
            Dd::expm1_reduced(self)
        } else {
            self.exp() - Dd::ONE
        }
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if !self.hi.is_finite() {
            return self;
        }
        if self.hi > 0.5 && self.hi < 1.5 {
            return (self - Dd::ONE).ln_1p();
        }
        // keep exp(-x0) away from subnormals by splitting off a power of two
        let e = self.hi.log2().floor() as i32;
        let m = self.mul_pow2(-e);
        let x0 = Dd::from_f64(m.hi.ln());
        let lm = x0 + m * (-x0).exp() - Dd::ONE;
        lm + Dd::LN_2.mul_f64(e as f64)
    }

    /// `ln(1 + u)`, accurate for tiny `u` through the `atanh` series.
    pub fn ln_1p(self) -> Dd {
        if self.hi.abs() < 0.5 {
            let s = self / (Dd::from_f64(2.0) + self);
            let s2 = s.sqr();
            let mut pow = s;
            let mut acc = s;
            for k in 1..60 {
                pow = pow * s2;
                let term = pow / Dd::from_f64((2 * k + 1) as f64);
                acc += term;
                if term.hi.abs() <= 1e-36 * acc.hi.abs() {
                    break;
                }
            }
            acc.mul_pow2(1)
        } else {
            (Dd::ONE + self).ln()
        }
    }

    pub fn max(self, other: Dd) -> Dd {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dd) -> Dd {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(self, digits: usize) -> String {
        if self.is_nan() {
            return "NaN".into();
        }
        if !self.is_finite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.hi == 0.0 {
            return format!("{:.*e}", digits.saturating_sub(1), 0.0);
        }
        let digits = digits.clamp(1, 34);
        let neg = self.is_sign_negative();
        let mut r = self.abs();
        let mut e = r.hi.log10().floor() as i32;
        r = r * Dd::from_f64(10.0).powi(-e);
        if r.hi >= 10.0 {
            r = r / Dd::from_f64(10.0);
            e += 1;
        } else if r.hi < 1.0 {
            r = r * Dd::from_f64(10.0);
            e -= 1;
        }
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = r.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            r = (r - Dd::from_f64(d)) * Dd::from_f64(10.0);
        }
        // round half up on the guard digit
        if ds[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        ds.truncate(digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push((b'0' + ds[0]) as char);
        if digits > 1 {
            out.push('.');
            for d in &ds[1..] {
                out.push((b'0' + d) as char);
            }
        }
        out.push('e');
        out.push_str(&e.to_string());
        out
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl From<i32> for Dd {
    fn from(x: i32) -> Dd {
        Dd::from_f64(x as f64)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (h, l) = quick_two_sum(s1, s2);
        Dd { hi: h, lo: l }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p1, p2);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l }.add_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - b * (self / b).trunc()
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            fn $m(&mut self, b: Dd) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *,
    DivAssign div_assign /, RemAssign rem_assign %);

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

impl Product for Dd {
    fn product<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ONE, |a, b| a * b)
    }
}

impl Zero for Dd {
    fn zero() -> Dd {
        Dd::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Dd {
        Dd::ONE
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDdError;

impl fmt::Display for ParseDdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid double-double literal")
    }
}

impl std::error::Error for ParseDdError {}

impl FromStr for Dd {
    type Err = ParseDdError;

    /// Decimal literal such as `-12.5e-3`; digits are accumulated exactly
    /// (up to 31 of them) and then scaled by a power of ten.
    fn from_str(s: &str) -> Result<Dd, ParseDdError> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().map_err(|_| ParseDdError)?),
            None => (body, 0),
        };
        let mut acc = Dd::ZERO;
        let mut scale = exp;
        let mut seen_dot = false;
        let mut any = false;
        for c in mant.chars() {
            match c {
                '0'..='9' => {
                    acc = acc * Dd::from_f64(10.0) + Dd::from_f64(c as u8 as f64 - 48.0);
                    if seen_dot {
                        scale -= 1;
                    }
                    any = true;
                }
                '.' if !seen_dot => seen_dot = true,
                _ => return Err(ParseDdError),
            }
        }
        if !any {
            return Err(ParseDdError);
        }
        let v = if scale >= 0 {
            acc * Dd::from_f64(10.0).powi(scale)
        } else {
            acc / Dd::from_f64(10.0).powi(-scale)
        };
        Ok(if neg { -v } else { v })
    }
}

impl Num for Dd {
    type FromStrRadixErr = ParseDdError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Dd, ParseDdError> {
        if radix != 10 {
            return Err(ParseDdError);
        }
        s.parse()
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        if t.hi.abs() >= 9.2e18 {
            return None;
        }
        Some(t.hi as i64 + t.lo as i64)
    }
    fn to_u64(&self) -> Option<u64> {
        if self.is_sign_negative() {
            return None;
        }
        self.to_i64().map(|v| v as u64)
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Dd> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Dd::new(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Dd> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Dd::new(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Dd> {
        Some(Dd::from_f64(x))
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({})", self.to_sci(32))
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(32);
        f.write_str(&self.to_sci(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, rel: f64) -> bool {
        ((a - b).abs() / b.abs()).hi <= rel
    }

    #[test]
    fn constants_are_normalized() {
        for c in [Dd::PI, Dd::E, Dd::LN_2, Dd::LN_10, Dd::LN_SQRT_2PI, Dd::EULER_GAMMA] {
            assert_eq!(c, Dd::new(c.hi, c.lo));
        }
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-20, 1e-5, 0.3, 1.0, 2.5, 17.0, 300.0, 700.0] {
            let d = Dd::from_f64(x);
            assert!(close(d.ln().exp(), d, 1e-30), "x = {x}");
            // ln is ill-conditioned at exp(x) ~ 1, so tiny x gets an absolute bound
            let back = d.exp().ln();
            assert!(close(back, d, 1e-30) || (back - d).abs().hi < 1e-31, "x = {x}");
        }
        assert!(close(Dd::ONE.exp(), Dd::E, 1e-31));
        assert!(close(Dd::from_f64(2.0).ln(), Dd::LN_2, 1e-31));
        assert!(close(Dd::from_f64(10.0).ln(), Dd::LN_10, 1e-31));
    }

    #[test]
    fn small_argument_paths() {
        let u = Dd::from_f64(1e-25);
        assert!(close(u.ln_1p(), u - u.sqr() / Dd::from_f64(2.0), 1e-31));
        assert!(close(u.exp_m1(), u + u.sqr() / Dd::from_f64(2.0), 1e-31));
        let v = Dd::from_f64(-0.3);
        assert!(close(v.ln_1p(), (Dd::ONE + v).ln(), 1e-30));
        assert!(close(v.exp_m1(), v.exp() - Dd::ONE, 1e-30));
    }

    #[test]
    fn sqrt_and_division() {
        let two = Dd::from_f64(2.0);
        let r = two.sqrt();
        assert!(close(r * r, two, 1e-31));
        let third = Dd::ONE / Dd::from_f64(3.0);
        assert!(close(third * Dd::from_f64(3.0), Dd::ONE, 1e-31));
    }

    #[test]
    fn parse_and_print() {
        let x: Dd = "3.14159265358979323846264338327950288".parse().unwrap();
        assert!(close(x, Dd::PI, 1e-31));
        assert_eq!(Dd::PI.to_sci(20), "3.1415926535897932385e0");
        assert_eq!(Dd::from_f64(-0.125).to_sci(3), "-1.25e-1");
        assert!("1.2.3".parse::<Dd>().is_err());
    }

    #[test]
    fn integer_conversion_is_exact() {
        let n = (1i64 << 60) + 3;
        let d = Dd::from_i64(n).unwrap();
        assert_eq!(d.to_i64(), Some(n));
    }
}
