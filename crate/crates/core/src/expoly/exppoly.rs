use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{content_of, Poly};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::Rational;

/// Exact exponential polynomial `sum_k p_k(t) e^{k t}` with `k >= 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<u32, Poly>,
}

impl ExpPoly {
    pub fn zero() -> ExpPoly {
        ExpPoly::default()
    }

    pub fn constant(c: Rational) -> ExpPoly {
        ExpPoly::term(0, Poly::constant(c))
    }

    pub fn one() -> ExpPoly {
        ExpPoly::constant(Rational::one())
    }

    /// The variable `t`.
    pub fn t() -> ExpPoly {
        ExpPoly::term(0, Poly::from_ints(&[0, 1]))
    }

    /// `e^{k t}`.
    pub fn exp(k: u32) -> ExpPoly {
        ExpPoly::term(k, Poly::constant(Rational::one()))
    }

    /// The single term `p(t) e^{k t}`.
    pub fn term(k: u32, p: Poly) -> ExpPoly {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(k, p);
        }
        ExpPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (u32, Poly)>) -> ExpPoly {
        it.into_iter().fold(ExpPoly::zero(), |acc, (k, p)| &acc + &ExpPoly::term(k, p))
    }

    pub fn terms(&self) -> &BTreeMap<u32, Poly> {
        &self.terms
    }

    pub fn poly(&self, k: u32) -> Poly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the expression is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let p = self.terms.get(&0)?;
                (p.degree() == Some(0)).then(|| p.coeff(0))
            }
            _ => None,
        }
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(Poly::is_nonnegative)
    }

    pub fn scale(&self, s: &Rational) -> ExpPoly {
        if s.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly { terms: self.terms.iter().map(|(&k, p)| (k, p.scale(s))).collect() }
    }

    /// Divides out `e^{m t}`; `m` must not exceed the minimal degree.
    pub fn strip_exp(&self, m: u32) -> ExpPoly {
        assert!(self.min_degree().map_or(true, |d| d >= m), "cannot strip e^({m}t)");
        ExpPoly { terms: self.terms.iter().map(|(&k, p)| (k - m, p.clone())).collect() }
    }

    /// Positive rational content over every coefficient (1 for zero).
    pub fn content(&self) -> Rational {
        content_of(self.terms.values().flat_map(|p| p.coeffs().iter()))
    }

    /// `d/dt [p_k e^{kt}] = (p_k' + k p_k) e^{kt}`.
    pub fn differentiate(&self) -> ExpPoly {
        let terms = self.terms.iter().filter_map(|(&k, p)| {
            let kp = p.scale(&Rational::from_integer(BigInt::from(k)));
            let d = &p.derivative() + &kp;
            (!d.is_zero()).then_some((k, d))
        });
        ExpPoly { terms: terms.collect() }
    }

    pub fn value_at_zero(&self) -> Rational {
        self.terms.values().map(Poly::at_zero).fold(Rational::zero(), |a, b| a + b)
    }

    /// Exact `f^{(n)}(0)` by `n` symbolic differentiations.
    pub fn derivative_limit_at_zero(&self, n: usize) -> Rational {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.differentiate();
        }
        f.value_at_zero()
    }

    /// Maclaurin coefficients `c_0 .. c_{count-1}` by convolving each `p_k`
    /// with the series of `e^{k t}`.
    pub fn taylor_coeffs(&self, count: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); count];
        for (&k, p) in &self.terms {
            let k = Rational::from_integer(BigInt::from(k));
            // e[m] = k^m / m!
            let mut e = Vec::with_capacity(count);
            let mut cur = Rational::one();
            for m in 0..count {
                if m > 0 {
                    cur = cur * &k / Rational::from_integer(BigInt::from(m));
                }
                e.push(cur.clone());
            }
            for (i, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for n in i..count {
                    let em = &e[n - i];
                    if !em.is_zero() {
                        out[n] += a * em;
                    }
                }
            }
        }
        out
    }

    /// Floating evaluation, each term summed separately.
    pub fn eval<T: Real>(&self, t: T) -> Result<T> {
        if !t.is_finite() {
            return Err(Error::Parameter(format!("non-finite t = {t}")));
        }
        let mut acc = T::zero();
        for (&k, p) in &self.terms {
            let v = if k == 0 { p.eval(t) } else { p.eval(t) * (T::of(k as f64) * t).exp() };
            if !v.is_finite() {
                return Err(Error::Overflow(t.as_f64()));
            }
            acc += v;
        }
        if !acc.is_finite() {
            return Err(Error::Overflow(t.as_f64()));
        }
        Ok(acc)
    }

    /// Exact value; available at `t = 0` or when no exponential is present.
    pub fn eval_exact(&self, t: &Rational) -> Result<Rational> {
        if t.is_zero() {
            return Ok(self.value_at_zero());
        }
        match (self.terms.len(), self.terms.get(&0)) {
            (0, _) => Ok(Rational::zero()),
            (1, Some(p)) => Ok(p.eval_rational(t)),
            _ => Err(Error::Parameter(
                "exact evaluation with e^(kt), k > 0, is only defined at t = 0".into(),
            )),
        }
    }

    pub fn pow(&self, n: u32) -> ExpPoly {
        (0..n).fold(ExpPoly::one(), |acc, _| &acc * self)
    }

    /// Canonical text accepted by [`super::parse_expoly`].
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&k, p)| match k {
                0 => format!("({p})"),
                1 => format!("({p})*E^(t)"),
                _ => format!("({p})*E^({k}t)"),
            })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, o: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (&k, p) in &o.terms {
            let s = match terms.get(&k) {
                Some(q) => q + p,
                None => p.clone(),
            };
            if s.is_zero() {
                terms.remove(&k);
            } else {
                terms.insert(k, s);
            }
        }
        ExpPoly { terms }
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(&k, p)| (k, -p)).collect() }
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, o: &ExpPoly) -> ExpPoly {
        self + &(-o)
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, o: &ExpPoly) -> ExpPoly {
        let mut acc = ExpPoly::zero();
        for (&a, p) in &self.terms {
            for (&b, q) in &o.terms {
                acc = &acc + &ExpPoly::term(a + b, p * q);
            }
        }
        acc
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPoly({})", self.render())
    }
}

impl Serialize for ExpPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for ExpPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ExpPoly, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_expoly(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> ExpPoly {
        ExpPoly::from_terms([
            (4, Poly::from_ints(&[2, 1])),
            (3, Poly::from_ints(&[0, -2, -4])),
            (2, Poly::from_ints(&[-4, -2])),
            (1, Poly::from_ints(&[0, 2])),
            (0, Poly::from_ints(&[2, 1])),
        ])
    }

    #[test]
    fn derivative_of_f1() {
        let want = ExpPoly::from_terms([
            (4, Poly::from_ints(&[9, 4])),
            (3, Poly::from_ints(&[-2, -14, -12])),
            (2, Poly::from_ints(&[-10, -4])),
            (1, Poly::from_ints(&[2, 2])),
            (0, Poly::from_ints(&[1])),
        ]);
        assert_eq!(f1().differentiate(), want);
    }

    #[test]
    fn product_rule_term() {
        let f = ExpPoly::term(1, Poly::from_ints(&[0, 1]));
        assert_eq!(f.differentiate(), ExpPoly::term(1, Poly::from_ints(&[1, 1])));
        assert!(ExpPoly::zero().differentiate().is_zero());
    }

    #[test]
    fn f1_vanishes_at_zero_and_taylor_starts_at_five() {
        assert!(f1().value_at_zero().is_zero());
        let c = f1().taylor_coeffs(6);
        assert!(c[..5].iter().all(Zero::is_zero));
        assert_eq!(c[5], Rational::new(2.into(), 3.into()));
    }

    #[test]
    fn taylor_of_exp() {
        let c = ExpPoly::exp(1).taylor_coeffs(4);
        let want: Vec<Rational> = [(1, 1), (1, 1), (1, 2), (1, 6)]
            .iter()
            .map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        assert_eq!(c, want);
        assert_eq!(ExpPoly::one().taylor_coeffs(3)[1..], [Rational::zero(), Rational::zero()]);
    }

    #[test]
    fn eval_constant_term() {
        let f = ExpPoly::term(0, Poly::from_ints(&[2, 1]));
        assert_eq!(f.eval(3.0f64).unwrap(), 5.0);
        assert_eq!(f.eval_exact(&Rational::from_integer(3.into())).unwrap(), Rational::from_integer(5.into()));
        assert!(f1().eval_exact(&Rational::one()).is_err());
        assert!(matches!(f1().eval(400.0f64), Err(Error::Overflow(_))));
    }

    #[test]
    fn strip_and_content() {
        let g = ExpPoly::from_terms([(3, Poly::from_ints(&[4, 6])), (1, Poly::from_ints(&[-2]))]);
        assert_eq!(g.content(), Rational::from_integer(2.into()));
        let s = g.strip_exp(1);
        assert_eq!(s.min_degree(), Some(0));
        assert_eq!(s.max_degree(), Some(2));
    }
}
