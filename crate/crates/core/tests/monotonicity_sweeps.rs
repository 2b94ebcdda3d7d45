use burnside::monotonicity::{h_lambda_scan, theorem1_claims, theorem2_claims, witness_claims, Expectation};

#[test]
fn theorem1_all_items_pass() {
    for c in theorem1_claims() {
        let out = c.run().unwrap();
        assert!(out.passed && !out.flagged, "{}", c.id);
        assert_eq!(out.reports.len(), 2);
    }
}

#[test]
fn theorem2_all_functions_pass() {
    for c in theorem2_claims() {
        let out = c.run().unwrap();
        assert!(out.consistent, "{}", c.id);
        if c.expectation == Expectation::Holds {
            assert!(out.passed, "{}", c.id);
        }
    }
}

#[test]
fn sharpness_witnesses() {
    for c in witness_claims() {
        let out = c.run().unwrap();
        match c.id.as_str() {
            // only fails through derivatives far beyond order 10
            "lcm-g_alpha(0.9)" => assert!(out.passed && !out.consistent),
            "lcm-F_alpha(0.4)" | "lcm-inv-g_alpha(0.6)" => {
                assert!(out.flagged, "{}", c.id);
                assert!(out.reports.iter().any(|r| r.first_failure() == Some(1)));
            }
            _ => assert!(out.consistent && out.passed, "{}", c.id),
        }
    }
}

#[test]
fn h_lambda_scan_reports_every_lambda() {
    let scan = h_lambda_scan(&[0.0, 0.25, 0.5, 0.75, 1.0, 2.0]).unwrap();
    assert_eq!(scan.len(), 6);
    // H_{1/2} is H itself
    assert!(scan[2].1.passed());
}
