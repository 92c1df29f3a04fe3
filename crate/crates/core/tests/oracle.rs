use dforms::fixtures::{random_double_form, random_form};
use dforms::{oracle, pfaffian, DoubleForm, Rational, Scalar};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), 0..=n, 0..=n, any::<u64>()))
}

fn sign(e: usize) -> Rational {
    Rational::from_i64(if e.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_matches_shuffle_sum((n, p, q, seed) in shape(), a in 0usize..=2, b in 0usize..=2) {
        let (a, b) = (a.min(n - p), b.min(n - q));
        let x: DoubleForm<Rational> = random_double_form(n, p, q, seed);
        let y: DoubleForm<Rational> = random_double_form(n, a, b, seed ^ 0x5555);
        prop_assert_eq!(x.wedge(&y).unwrap(), oracle::wedge_form_oracle(&x, &y).unwrap());
    }

    #[test]
    fn contraction_matches_evaluation((n, p, q, seed) in shape()) {
        let x: DoubleForm<Rational> = random_double_form(n, p, q, seed);
        prop_assert_eq!(x.contract(), oracle::contract_oracle(&x).unwrap());
    }

    #[test]
    fn hodge_matches_basis_definition((n, p, q, seed) in shape()) {
        let x: DoubleForm<Rational> = random_double_form(n, p, q, seed);
        prop_assert_eq!(x.hodge(), oracle::hodge_oracle(&x).unwrap());
    }

    #[test]
    fn graded_commutativity((n, p, q, seed) in shape(), a in 0usize..=2, b in 0usize..=2) {
        let (a, b) = (a.min(n - p), b.min(n - q));
        let x: DoubleForm<Rational> = random_double_form(n, p, q, seed);
        let y: DoubleForm<Rational> = random_double_form(n, a, b, seed.wrapping_add(1));
        let xy = x.wedge(&y).unwrap();
        let yx = y.wedge(&x).unwrap().scale(&sign(p * a + q * b));
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn float_kernels_track_exact((n, p, q, seed) in shape()) {
        let x: DoubleForm<Rational> = random_double_form(n, p, q, seed);
        let xf: DoubleForm<f64> = random_double_form(n, p, q, seed);
        for (e, f) in x.hodge().contract().entries().iter().zip(xf.hodge().contract().entries()) {
            prop_assert!((e.to_f64() - f).abs() <= 1e-9 * e.to_f64().abs().max(1.0));
        }
    }
}

#[test]
fn determinant_and_pfaffian_oracles() {
    let m: Vec<Rational> = [2, 1, 0, 1, 3, 1, 0, 1, 4].into_iter().map(Rational::from_i64).collect();
    assert_eq!(oracle::det_oracle(&m, 3), Rational::from_i64(18));
    assert_eq!(oracle::minor_sum_oracle(&m, 3, 1), Rational::from_i64(9));
    assert_eq!(oracle::minor_sum_oracle(&m, 3, 2), Rational::from_i64(5 + 8 + 11));
    let j: Vec<Rational> = [0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0].into_iter().map(Rational::from_i64).collect();
    assert_eq!(oracle::pfaffian_oracle(&j, 4), Rational::from_i64(1));
}

#[test]
fn exterior_pfaffian_matches_matchings() {
    for seed in 1..6 {
        for (n, k) in [(6, 2), (4, 4), (4, 2)] {
            let w = random_form::<Rational>(n, k, seed);
            assert_eq!(pfaffian::pf(&w).unwrap(), oracle::form_pfaffian_oracle(&w));
        }
    }
}
