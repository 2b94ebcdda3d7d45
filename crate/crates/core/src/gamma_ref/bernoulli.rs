use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{Dd, Real};
use crate::Rational;

const MAX_INDEX: usize = 120;

/// `B_0 ..= B_120` with `B_1 = -1/2`.
pub fn bernoulli_numbers() -> &'static [Rational] {
    static CELL: OnceLock<Vec<Rational>> = OnceLock::new();
    CELL.get_or_init(|| {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut b: Vec<Rational> = vec![Rational::one()];
        for m in 1..=MAX_INDEX {
            let mut binom = BigInt::one();
            let mut s = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                s += bj * Rational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers()[n].clone()
}

/// Stirling-series coefficients as double-doubles, indexed by `k >= 1`.
pub(crate) struct SeriesCoeffs {
    /// `B_{2k} / (2k (2k-1))`: log-gamma.
    pub lgamma: Vec<Dd>,
    /// `B_{2k} / (2k)`: digamma.
    pub digamma: Vec<Dd>,
    /// `B_{2k}`: trigamma.
    pub trigamma: Vec<Dd>,
}

pub(crate) fn series() -> &'static SeriesCoeffs {
    static CELL: OnceLock<SeriesCoeffs> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = bernoulli_numbers();
        let mut c = SeriesCoeffs { lgamma: vec![Dd::ZERO], digamma: vec![Dd::ZERO], trigamma: vec![Dd::ZERO] };
        for k in 1..=MAX_INDEX / 2 {
            let b2k = &b[2 * k];
            let two_k = Rational::from_integer(BigInt::from(2 * k));
            let lg = b2k / (&two_k * (&two_k - Rational::one()));
            c.lgamma.push(Dd::from_rational(&lg));
            c.digamma.push(Dd::from_rational(&(b2k / &two_k)));
            c.trigamma.push(Dd::from_rational(b2k));
        }
        c
    })
}

/// Converts a double-double constant into any [`Real`] without losing the low word.
pub(crate) fn cast<T: Real>(d: Dd) -> T {
    T::of(d.hi()) + T::of(d.lo())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn classical_values() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert!(bernoulli(13).is_zero());
        assert_eq!(bernoulli(20), q(-174611, 330));
    }

    #[test]
    fn series_coefficients() {
        let c = series();
        assert_eq!(c.lgamma[1], Dd::ONE / Dd::from_f64(12.0));
        assert_eq!(c.lgamma[2], -(Dd::ONE / Dd::from_f64(360.0)));
    }
}
