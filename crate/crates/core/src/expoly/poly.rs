use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Real;
use crate::Rational;

/// Dense univariate polynomial in `t` with rational coefficients.
/// `coeffs[i]` multiplies `t^i`; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::new(vec![c])
    }

    pub fn from_ints(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    /// The monomial `c t^n`.
    pub fn monomial(c: Rational, n: usize) -> Poly {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        Poly::new(v)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn at_zero(&self) -> Rational {
        self.coeff(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval<T: Real>(&self, t: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * t + T::from_rational(c))
    }

    /// gcd of the numerators over lcm of the denominators: the positive
    /// rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        content_of(self.coeffs.iter())
    }
}

pub(crate) fn content_of<'a>(cs: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in cs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Descending powers, e.g. `t^2 - 3/4*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trailing_zeros_dropped() {
        let p = Poly::new(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::new(vec![q(0, 1)]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = Poly::from_ints(&[2, 1]); // t + 2
        let b = Poly::from_ints(&[-1, 0, 3]);
        assert_eq!(&a * &b, Poly::from_ints(&[-2, -1, 6, 3]));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(b.derivative(), Poly::from_ints(&[0, 6]));
        assert_eq!(a.eval_rational(&q(1, 2)), q(5, 2));
    }

    #[test]
    fn content_normalizes() {
        let p = Poly::new(vec![q(6, 5), q(-9, 10)]);
        assert_eq!(p.content(), q(3, 10));
        let r = p.scale(&(Rational::one() / p.content()));
        assert_eq!(r, Poly::from_ints(&[4, -3]));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::new(vec![q(1, 1), q(-3, 4), q(1, 1)]).to_string(), "t^2 - 3/4*t + 1");
        assert_eq!(Poly::from_ints(&[0, -2]).to_string(), "-2*t");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
