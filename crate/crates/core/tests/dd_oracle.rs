//! Double-double arithmetic and ln Γ against 200-bit dashu-float evaluations.

use burnside::expoly::catalog;
use burnside::gamma_ref::{log_gamma, EvalPrecision};
use burnside::{Dd, ExpPoly, Rational};
use dashu_float::FBig;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

type F = FBig;
const BITS: usize = 200;

fn fi(n: i64) -> F {
    F::from(n).with_precision(BITS).value()
}

fn ff(x: f64) -> F {
    F::try_from(x).unwrap().with_precision(BITS).value()
}

fn from_dd(d: Dd) -> F {
    ff(d.hi()) + ff(d.lo())
}

fn from_rational(q: &Rational) -> F {
    let n = q.numer().to_string().parse::<i128>().unwrap();
    let d = q.denom().to_string().parse::<i128>().unwrap();
    F::from(n).with_precision(BITS).value() / F::from(d).with_precision(BITS).value()
}

fn to_f64(x: &F) -> f64 {
    x.to_f64().value()
}

fn rel(got: Dd, want: &F) -> f64 {
    let w = to_f64(want).abs().max(f64::MIN_POSITIVE);
    to_f64(&(from_dd(got) - want.clone())).abs() / w
}

/// `atan(1/n)` by its Taylor series.
fn atan_inv(n: i64) -> F {
    let x = fi(1) / fi(n);
    let x2 = x.clone() * x.clone();
    let (mut term, mut sum) = (x.clone(), x);
    for k in 1..200 {
        term = -(term * x2.clone());
        sum += term.clone() / fi(2 * k + 1);
    }
    sum
}

fn pi() -> F {
    fi(16) * atan_inv(5) - fi(4) * atan_inv(239)
}

const BERNOULLI: [(i64, i64); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

/// `ln Γ(x)` by upward recurrence to `x >= 40` and the Stirling series.
fn ln_gamma(x: f64) -> F {
    let mut y = ff(x);
    let mut shift = fi(0);
    while to_f64(&y) < 40.0 {
        shift += y.ln();
        y += fi(1);
    }
    let half = fi(1) / fi(2);
    let ln_2pi = (fi(2) * pi()).ln();
    let mut s = (y.clone() - half.clone()) * y.ln() - y.clone() + half * ln_2pi;
    let y2 = y.clone() * y.clone();
    let mut ypow = y;
    for (i, &(n, d)) in BERNOULLI.iter().enumerate() {
        let k = 2 * i as i64 + 2;
        s += fi(n) / (fi(d) * fi(k * (k - 1)) * ypow.clone());
        ypow *= y2.clone();
    }
    s - shift
}

#[test]
fn machin_pi_matches_dd() {
    assert!(rel(Dd::PI, &pi()) < 1e-31);
}

#[test]
fn log_gamma_matches_oracle() {
    let p = EvalPrecision::default();
    for x in [0.1, 0.5, 1.5, 2.0, 3.7, 10.0, 55.5, 1000.0] {
        let got = log_gamma(Dd::from_f64(x), &p).unwrap();
        let want = ln_gamma(x);
        let err = to_f64(&(from_dd(got) - want.clone())).abs();
        assert!(err < 1e-29 * to_f64(&want).abs().max(1.0), "x = {x}: err {err:e}");
    }
}

#[test]
fn catalog_exppoly_eval_matches_oracle() {
    for (name, f) in catalog::all() {
        for t in [0.25, 1.0, 3.0] {
            let got = f.eval(Dd::from_f64(t)).unwrap();
            let want = eval_oracle(&f, t);
            let scale = scale_oracle(&f, t);
            assert!(to_f64(&(from_dd(got) - want)).abs() < 1e-29 * scale, "{name} at t = {t}");
        }
    }
}

fn eval_oracle(f: &ExpPoly, t: f64) -> F {
    let tf = ff(t);
    let mut acc = fi(0);
    for (&k, p) in f.terms() {
        let mut v = fi(0);
        for c in p.coeffs().iter().rev() {
            v = v * tf.clone() + from_rational(c);
        }
        acc += v * (fi(k as i64) * tf.clone()).exp();
    }
    acc
}

/// Sum of absolute term values, the natural scale for cancellation.
fn scale_oracle(f: &ExpPoly, t: f64) -> f64 {
    f.terms()
        .iter()
        .map(|(&k, p)| {
            let v: f64 = p.coeffs().iter().enumerate().map(|(i, c)| c.abs().to_f64().unwrap() * t.powi(i as i32)).sum();
            v * (k as f64 * t).exp()
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_and_ln(x in -20.0f64..20.0) {
        let d = Dd::from_f64(x);
        prop_assert!(rel(d.exp(), &ff(x).exp()) < 1e-30);
        if x > 0.0 {
            prop_assert!(rel(d.ln(), &ff(x).ln()) < 1e-30);
        }
    }

    #[test]
    fn expm1_and_ln1p_near_zero(x in -0.5f64..0.5) {
        let d = Dd::from_f64(x);
        prop_assume!(x != 0.0);
        prop_assert!(rel(d.exp_m1(), &ff(x).exp_m1()) < 1e-30);
        prop_assert!(rel(d.ln_1p(), &ff(x).ln_1p()) < 1e-30);
    }

    #[test]
    fn sqrt_squares_back(x in 1e-6f64..1e6) {
        let s = from_dd(Dd::from_f64(x).sqrt());
        let back = s.clone() * s;
        prop_assert!(to_f64(&(back - ff(x))).abs() / x < 1e-30);
    }

    #[test]
    fn arithmetic_is_exactish(a in -1e3f64..1e3, b in 0.5f64..1e3) {
        let (da, db) = (Dd::from_f64(a) / Dd::from_f64(3.0), Dd::from_f64(b));
        let want = from_dd(da) * from_dd(db);
        prop_assert!(rel(da * db, &want) < 1e-31);
        let q = ff(a) / fi(3);
        prop_assert!(rel(da, &q) < 1e-31);
    }
}

#[test]
fn ln_near_one_is_relatively_accurate() {
    for x in [1.0 + 1e-9, 1.0 - 1e-7, 1.0 + 3e-4, 0.999] {
        assert!(rel(Dd::from_f64(x).ln(), &ff(x).ln()) < 1e-30, "x = {x}");
    }
}
