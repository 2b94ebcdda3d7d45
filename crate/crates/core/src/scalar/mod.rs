//! Scalar abstraction shared by the floating-point code paths.

mod dd;

pub use dd::{Dd, ParseDdError};

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssign, ToPrimitive};

/// A real scalar with the transcendental operations the library needs.
///
/// Implemented for `f32`, `f64` and the double-double [`Dd`].
pub trait Real:
    Copy
    + Send
    + Sync
    + Debug
    + Display
    + PartialOrd
    + Num
    + NumAssign
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    fn of(x: f64) -> Self;
    fn as_f64(self) -> f64;
    fn from_rational(q: &BigRational) -> Self;
    /// Unit roundoff of the representation.
    fn epsilon() -> f64;
    /// Significant decimal digits carried.
    fn digits() -> u32;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn floor(self) -> Self;
    fn is_finite(self) -> bool;

    fn pi() -> Self;
    fn ln_sqrt_2pi() -> Self;
    fn euler_gamma() -> Self;

    fn max(self, o: Self) -> Self {
        if self >= o {
            self
        } else {
            o
        }
    }

    fn min(self, o: Self) -> Self {
        if self <= o {
            self
        } else {
            o
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits")
    }

    fn recip(self) -> Self {
        Self::one() / self
    }
}

macro_rules! impl_real_float {
    ($t:ident, $digits:expr) => {
        impl Real for $t {
            fn of(x: f64) -> Self {
                x as $t
            }
            fn as_f64(self) -> f64 {
                self as f64
            }
            fn from_rational(q: &BigRational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn epsilon() -> f64 {
                $t::EPSILON as f64 / 2.0
            }
            fn digits() -> u32 {
                $digits
            }
            fn abs(self) -> Self {
                $t::abs(self)
            }
            fn sqrt(self) -> Self {
                $t::sqrt(self)
            }
            fn exp(self) -> Self {
                $t::exp(self)
            }
            fn exp_m1(self) -> Self {
                $t::exp_m1(self)
            }
            fn ln(self) -> Self {
                $t::ln(self)
            }
            fn ln_1p(self) -> Self {
                $t::ln_1p(self)
            }
            fn powi(self, n: i32) -> Self {
                $t::powi(self, n)
            }
            fn floor(self) -> Self {
                $t::floor(self)
            }
            fn is_finite(self) -> bool {
                $t::is_finite(self)
            }
            fn pi() -> Self {
                std::$t::consts::PI
            }
            fn ln_sqrt_2pi() -> Self {
                0.918_938_533_204_672_8 as $t
            }
            fn euler_gamma() -> Self {
                0.577_215_664_901_532_9 as $t
            }
        }
    };
}

impl_real_float!(f32, 7);
impl_real_float!(f64, 15);

impl Real for Dd {
    fn of(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn as_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn from_rational(q: &BigRational) -> Self {
        let hi = q.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let rest = q - BigRational::from_float(hi).expect("finite");
        Dd::new(hi, rest.to_f64().unwrap_or(0.0))
    }
    fn epsilon() -> f64 {
        Dd::EPSILON
    }
    fn digits() -> u32 {
        31
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn exp(self) -> Self {
        Dd::exp(self)
    }
    fn exp_m1(self) -> Self {
        Dd::exp_m1(self)
    }
    fn ln(self) -> Self {
        Dd::ln(self)
    }
    fn ln_1p(self) -> Self {
        Dd::ln_1p(self)
    }
    fn powi(self, n: i32) -> Self {
        Dd::powi(self, n)
    }
    fn floor(self) -> Self {
        Dd::floor(self)
    }
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
    fn pi() -> Self {
        Dd::PI
    }
    fn ln_sqrt_2pi() -> Self {
        Dd::LN_SQRT_2PI
    }
    fn euler_gamma() -> Self {
        Dd::EULER_GAMMA
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn generic_identity<T: Real>() -> f64 {
        let x = T::of(0.75);
        let lhs = x.exp().ln();
        (lhs - x).abs().as_f64()
    }

    #[test]
    fn identity_holds_per_precision() {
        assert!(generic_identity::<f32>() < 1e-6);
        assert!(generic_identity::<f64>() < 1e-15);
        assert!(generic_identity::<Dd>() < 1e-30);
    }

    #[test]
    fn rational_conversion_keeps_both_words() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let d = Dd::from_rational(&q);
        let back = (d * Dd::from_f64(3.0) - Dd::ONE).abs();
        assert!(back.hi() < 1e-31);
    }
}
