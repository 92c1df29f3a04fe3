use dforms::identities::{run_on_form, run_suite, CheckKind, SuiteConfig};
use dforms::fixtures::{self, Symmetry};
use dforms::{DoubleForm, Rational};

#[test]
fn exact_suite_on_small_dimensions() {
    let config = SuiteConfig { dims: vec![2, 3, 4], seeds: vec![1, 2], only: None };
    let out = run_suite::<Rational>(&config);
    assert!(out.len() > 100);
    let bad: Vec<_> = out.iter().filter(|r| r.is_failure()).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(out.iter().any(|r| r.kind == CheckKind::Conjecture));
}

#[test]
fn suite_is_deterministic() {
    let config = SuiteConfig { dims: vec![3], seeds: vec![5], only: None };
    assert_eq!(run_suite::<Rational>(&config), run_suite::<Rational>(&config));
}

#[test]
fn float_suite_within_tolerance() {
    let config = SuiteConfig { dims: vec![2, 3, 4, 5], seeds: vec![1], only: None };
    for r in run_suite::<f64>(&config) {
        assert!(!r.is_failure(), "{} {:?}: {}", r.name, r.params, r.relative_residual);
        if r.kind == CheckKind::Theorem {
            assert!(r.relative_residual <= 1e-9);
        }
    }
}

#[test]
fn only_filter_restricts_the_run() {
    let config = SuiteConfig { dims: vec![4], seeds: vec![1], only: Some("laplace".into()) };
    let out = run_suite::<Rational>(&config);
    assert!(!out.is_empty());
    assert!(out.iter().all(|r| r.name == "laplace"));
}

#[test]
fn single_forms_get_the_applicable_checks() {
    let h: DoubleForm<Rational> = fixtures::random_bilinear(4, 3, Symmetry::Skew);
    let out = run_on_form(&h, "skew", 1, None);
    assert!(out.iter().any(|r| r.name == "pfaffian_squared"));
    assert!(out.iter().all(|r| !r.is_failure()));
    let rr: DoubleForm<Rational> = fixtures::random_bianchi(5, 2, 2, 1);
    let out = run_on_form(&rr, "bianchi", 1, None);
    assert!(out.iter().any(|r| r.name == "avez"));
    assert!(out.iter().all(|r| !r.is_failure()));
}
