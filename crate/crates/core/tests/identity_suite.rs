use qeuler::identities::{IdentityChecker, IdentityId, SuiteConfig};

#[test]
fn default_grid_holds() {
    let result = IdentityChecker::new().run_suite(&SuiteConfig::default());
    assert!(result.skipped.is_empty(), "{:?}", result.skipped);
    let failures: Vec<String> = result
        .failures()
        .map(|r| format!("{} {}: {}", r.id, r.params, r.residual))
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for id in IdentityId::ALL {
        assert!(result.of(id).next().is_some(), "{id} produced no reports");
    }
    assert!(result.of(IdentityId::E8printed).all(|r| !r.holds));
    assert!(result.of(IdentityId::T9printed).all(|r| !r.holds));
}

#[test]
fn single_identity_selection() {
    let config = SuiteConfig {
        n_max: 5,
        only: Some(IdentityId::T1),
        ..SuiteConfig::default()
    };
    let result = IdentityChecker::new().run_suite(&config);
    assert_eq!(result.reports.len(), 5);
    assert!(result.reports.iter().all(|r| r.id == IdentityId::T1 && r.holds));
}

#[test]
fn suite_output_is_deterministic() {
    let config = SuiteConfig {
        n_max: 4,
        m_max: 4,
        k_max: 2,
        s_max: 2,
        t9_n_max: 3,
        ..SuiteConfig::default()
    };
    let render = |r: &qeuler::identities::SuiteResult| {
        r.reports
            .iter()
            .map(|x| format!("{:?}", x.record()))
            .collect::<Vec<_>>()
    };
    let a = IdentityChecker::new().run_suite(&config);
    let b = IdentityChecker::new().run_suite(&config);
    assert_eq!(render(&a), render(&b));
}

#[test]
fn s_fold_reduces_to_one_and_two_factors() {
    let checker = IdentityChecker::new();
    for n in 1..=4 {
        for k in 0..n {
            let t9 = checker.check_bernstein_product(&[n], k).unwrap();
            let t6 = checker.check_bernstein_integral(n, k).unwrap();
            assert_eq!((t9.lhs, t9.rhs), (t6.lhs, t6.rhs), "n={n} k={k}");
        }
    }
    for m in 0..=4 {
        for n in 0..=4 {
            for k in 0..=2 {
                if m + n <= 2 * k {
                    continue;
                }
                let t9 = checker.check_bernstein_product(&[n, m], k).unwrap();
                let t8 = checker.check_bernstein_pair(m, n, k).unwrap();
                assert_eq!(
                    (t9.lhs, t9.rhs, t9.branch),
                    (t8.lhs, t8.rhs, t8.branch),
                    "m={m} n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn unknown_identity_is_a_parse_error() {
    assert!("bogus".parse::<IdentityId>().is_err());
    assert_eq!("E18v20".parse::<IdentityId>().unwrap(), IdentityId::E18v20);
}
