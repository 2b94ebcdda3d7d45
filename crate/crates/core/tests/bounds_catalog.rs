use burnside::bounds::{
    asymptotic_gamma_ln, best_shift, bound, catalog, catalog_summary, compare_bounds, default_grid, evaluate_bound,
    lu_threshold, derived_enclosure_check, verify_bound_on_grid, LuFamily, Side,
};
use burnside::gamma_ref::{log_gamma, EvalPrecision};
use burnside::monotonicity::Grid;
use burnside::Dd;

#[test]
fn asserted_specs_hold_on_their_grids() {
    for s in catalog().iter().filter(|s| s.asserted) {
        let v = verify_bound_on_grid(s, &default_grid(s)).unwrap();
        assert!(v.is_empty(), "{}: {:?}", s.name, v.first());
    }
    let summary = catalog_summary(&catalog()).unwrap();
    assert_eq!(summary.len(), catalog().len());
}

#[test]
fn h_upper_constant_is_approached_at_zero() {
    let s = bound("h_constants").unwrap();
    let e = evaluate_bound(&s, 0.001).unwrap();
    assert!(e.upper_margin.unwrap() > 0.0 && e.upper_margin.unwrap() < 1e-2);
    let far = evaluate_bound(&s, 1e4).unwrap();
    assert!(far.lower_margin.unwrap() > 0.0 && far.lower_margin.unwrap() < 1e-3);
}

#[test]
fn lu_jnt_wins_asymptotically_over_h_constants() {
    let g = Grid::spanning(1.0, 1e4, 2).unwrap();
    let r = compare_bounds(&bound("h_constants_burnside").unwrap(), &bound("lu_jnt").unwrap(), Side::Upper, &g).unwrap();
    assert_eq!(r.asymptotic_winner, "lu_jnt");
    let limit = (7.0f64 / 12.0).exp() / std::f64::consts::PI.sqrt();
    assert!((r.right_edge_ratio - limit).abs() < 1e-3, "{}", r.right_edge_ratio);
    assert!(limit > 1.0);
}

#[test]
fn sqrt_shift_upper_beats_h_constants_from_one() {
    let g = Grid::spanning(1.0, 50.0, 2).unwrap();
    let a = bound("burnside_sqrt_shift").unwrap();
    let r = compare_bounds(&a, &bound("h_constants_burnside").unwrap(), Side::Upper, &g).unwrap();
    assert_eq!(r.asymptotic_winner, a.name);
    for &(l, h) in &r.brackets {
        assert!(h - l <= 1e-6);
    }
}

#[test]
fn half_shift_is_most_accurate() {
    for n in [5, 10, 20] {
        let (best, errs) = best_shift(n, &[0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        assert_eq!(best, 0.5, "{errs:?}");
    }
}

#[test]
fn truncations_approximate_gamma() {
    let p = EvalPrecision::default();
    let rel = |x: f64, terms: usize| {
        let xd = Dd::from_f64(x);
        let d = asymptotic_gamma_ln(xd, terms).unwrap() - log_gamma(xd + Dd::ONE, &p).unwrap();
        d.exp_m1().abs().hi()
    };
    assert!(rel(10.0, 1) < rel(10.0, 0));
    assert!(rel(20.0, 4) < 1e-13);
}

#[test]
fn derived_enclosure_is_tighter() {
    for row in derived_enclosure_check(&[1.0, 5.0, 10.0]).unwrap() {
        assert!(row.encloses && row.tighter, "{row:?}");
    }
}

#[test]
fn lu_thresholds_are_reported() {
    let g = Grid::spanning(0.05, 50.0, 200).unwrap();
    let jnt = lu_threshold(LuFamily::Jnt, 1.0, &g).unwrap();
    assert!(jnt.holds_from.is_some());
    let wang6 = lu_threshold(LuFamily::Wang, 6.0, &g).unwrap();
    assert_eq!(wang6.points, 200);
}
