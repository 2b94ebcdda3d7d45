//! Algebraic invariants of exact exponential polynomials, certificates and difference tables.

use burnside::expoly::{certify_absolutely_monotonic, parse_expoly};
use burnside::monotonicity::{check_cm, finite_difference_table, Grid};
use burnside::{Dd, ExpPoly, Poly, Rational, Real};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..4).prop_map(|cs| Poly::from_ints(&cs))
}

fn arb_expoly() -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((0u32..4, arb_poly()), 1..4).prop_map(|ts| {
        ts.into_iter().fold(ExpPoly::zero(), |acc, (k, p)| &acc + &ExpPoly::term(k, p))
    })
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn product_rule(f in arb_expoly(), g in arb_expoly()) {
        let lhs = (&f * &g).differentiate();
        let rhs = &(&f.differentiate() * &g) + &(&f * &g.differentiate());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn taylor_coefficients_match_derivatives(f in arb_expoly()) {
        let coeffs = f.taylor_coeffs(13);
        for (n, c) in coeffs.iter().enumerate() {
            prop_assert_eq!(c * factorial(n), f.derivative_limit_at_zero(n));
        }
    }

    #[test]
    fn display_parses_back(f in arb_expoly()) {
        prop_assert_eq!(parse_expoly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn certificates_replay_and_detect_tampering(f in arb_expoly()) {
        if let Ok(cert) = certify_absolutely_monotonic(&f, 24) {
            prop_assert!(cert.replay().is_ok());
            let json = cert.to_json();
            let back: burnside::AMCertificate = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, &cert);
            let mut bad = cert.clone();
            bad.root_limit += Rational::one();
            prop_assert!(bad.replay().is_err());
            if !cert.steps.is_empty() {
                let mut bad = cert.clone();
                bad.steps[0].limit += Rational::one();
                prop_assert!(bad.replay().is_err());
            }
        }
    }

    #[test]
    fn differences_of_polynomials_vanish(cs in prop::collection::vec(-20i64..=20, 1..6), start in -10i64..10) {
        let p = Poly::from_ints(&cs);
        let deg = p.degree().unwrap_or(0);
        let values: Vec<Rational> =
            (0..deg as i64 + 4).map(|i| p.eval_rational(&Rational::from_integer(BigInt::from(start + i)))).collect();
        let table = finite_difference_table(&values, deg + 1);
        prop_assert!(table[deg + 1].iter().all(Zero::is_zero));
    }

    #[test]
    fn decaying_exponential_is_cm(a in 0.05f64..3.0, start in 0.1f64..5.0) {
        let f = move |x: Dd| Ok((-Dd::of(a) * x).exp());
        let grid = Grid::new(start, 0.125, 32).unwrap();
        let r = check_cm("exp", &f, &grid, 8, 1).unwrap();
        prop_assert!(r.passed() && !r.flagged());
    }
}

#[test]
fn growing_exponential_is_not_cm() {
    let f = |x: Dd| Ok(x.exp());
    let r = check_cm("exp", &f, &Grid::new(0.5, 0.125, 32).unwrap(), 4, 1).unwrap();
    assert_eq!(r.first_failure(), Some(1));
}
