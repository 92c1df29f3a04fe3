use dforms::fixtures::{self, Symmetry};
use dforms::invariants as inv;
use dforms::scalar::{binomial, factorial};
use dforms::{oracle, DoubleForm, Rational, Scalar};

fn r(v: i64) -> Rational {
    Rational::from_i64(v)
}

#[test]
fn metric_invariants_are_binomials() {
    for n in 1..=6 {
        let g = DoubleForm::<Rational>::metric(n);
        for k in 0..=n {
            assert_eq!(inv::s_k(&g, k).unwrap(), r(binomial(n, k) as i64));
        }
    }
}

#[test]
fn constant_curvature_gauss_bonnet_integrands() {
    for n in 2..=6 {
        let cc = fixtures::constant_curvature::<Rational>(n, r(1));
        for k in 0..=n / 2 {
            let want = factorial::<Rational>(n) / (factorial::<Rational>(n - 2 * k) * r(1 << k));
            assert_eq!(inv::h2k(&cc, k).unwrap(), want, "n={n} k={k}");
            assert_eq!(inv::h2k_contraction(&cc, k).unwrap(), want);
        }
    }
}

#[test]
fn s_k_is_a_sum_of_principal_minors() {
    for n in 1..=5 {
        for seed in 0..5 {
            let h: DoubleForm<Rational> = fixtures::random_bilinear(n, seed, Symmetry::General);
            for k in 0..=n {
                assert_eq!(inv::s_k(&h, k).unwrap(), oracle::minor_sum_oracle(h.entries(), n, k));
                assert_eq!(inv::s_k_contraction(&h, k).unwrap(), inv::s_k(&h, k).unwrap());
            }
        }
    }
}

#[test]
fn top_cofactor_is_the_adjugate() {
    for n in 2..=5 {
        let h: DoubleForm<Rational> = fixtures::random_bilinear(n, 11, Symmetry::General);
        assert_eq!(inv::t_k(&h, n - 1).unwrap().entries(), &oracle::cofactor_matrix_oracle(h.entries(), n)[..]);
        assert!(inv::t_k(&h, n).is_err());
    }
}

#[test]
fn general_operation_reduces_to_the_classical_families() {
    for n in 2..=5 {
        let rr: DoubleForm<Rational> = fixtures::random_bianchi(n, 2, 2, 40 + n as u64);
        for k in 0..=n / 2 {
            let h0 = inv::h_rpq(&rr, 0, k).unwrap();
            assert_eq!(h0.as_scalar(), Some(&inv::h2k(&rr, k).unwrap()));
            if 2 * k < n {
                assert_eq!(inv::h_rpq(&rr, 1, k).unwrap(), inv::t2k(&rr, k).unwrap());
            }
            if 2 * k + 2 <= n {
                assert_eq!(inv::h_rpq(&rr, 2, k).unwrap(), inv::n2k(&rr, k).unwrap());
            }
        }
        let h: DoubleForm<Rational> = fixtures::random_bilinear(n, 50 + n as u64, Symmetry::Symmetric);
        for q in 0..=n {
            for rk in 0..=n - q {
                let want = inv::s_rq(&h, rk, q).unwrap().scale(&factorial(q));
                assert_eq!(inv::h_rpq(&h, rk, q).unwrap(), want);
            }
        }
    }
}

#[test]
fn hodge_and_contraction_forms_agree() {
    for n in 2..=5 {
        let h: DoubleForm<Rational> = fixtures::random_bilinear(n, 60, Symmetry::Symmetric);
        for q in 0..=n {
            for rk in 0..=n - q {
                assert_eq!(inv::s_rq_hodge(&h, rk, q).unwrap(), inv::s_rq_contraction(&h, rk, q).unwrap());
            }
        }
    }
}

#[test]
fn bianchi_fixtures_satisfy_bianchi() {
    for n in 3..=6 {
        let rr: DoubleForm<Rational> = fixtures::random_bianchi(n, 2, 3, 7);
        assert_eq!(rr.bianchi_residual().unwrap(), r(0));
        assert!(rr.is_symmetric());
    }
}
