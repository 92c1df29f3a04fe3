use dforms::fixtures::{self, Symmetry};
use dforms::{DoubleForm, Rational, Scalar};
use rand_core::RngCore;

#[test]
fn splitmix_reference_vector() {
    let mut rng = fixtures::stream(1234567);
    let got: Vec<u64> = (0..5).map(|_| rng.next_u64()).collect();
    assert_eq!(
        got,
        [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821
        ]
    );
}

#[test]
fn entries_follow_the_stream() {
    let h: DoubleForm<Rational> = fixtures::random_bilinear(3, 1, Symmetry::General);
    let want: Vec<Rational> = [-1, -3, -2, -3, 2, -1, -3, 0, -2].into_iter().map(Rational::from_i64).collect();
    assert_eq!(h.entries(), &want[..]);
}

#[test]
fn symmetric_and_skew_fill_the_upper_triangle() {
    let s: DoubleForm<Rational> = fixtures::random_bilinear(3, 1, Symmetry::Symmetric);
    let k: DoubleForm<Rational> = fixtures::random_bilinear(3, 1, Symmetry::Skew);
    let e = |w: &DoubleForm<Rational>, i: usize, j: usize| w.entries()[3 * i + j].clone();
    assert_eq!([e(&s, 0, 0), e(&s, 0, 1), e(&s, 0, 2), e(&s, 1, 1)], [-1, -3, -2, -3].map(Rational::from_i64));
    assert_eq!([e(&k, 0, 1), e(&k, 0, 2), e(&k, 1, 2)], [-1, -3, -2].map(Rational::from_i64));
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(e(&s, i, j), e(&s, j, i));
            assert_eq!(e(&k, i, j), -e(&k, j, i));
        }
    }
}

#[test]
fn generators_are_deterministic() {
    for seed in 1..4 {
        assert_eq!(
            fixtures::random_bianchi::<Rational>(5, 2, 2, seed),
            fixtures::random_bianchi::<Rational>(5, 2, 2, seed)
        );
        assert_eq!(fixtures::random_form::<Rational>(6, 3, seed), fixtures::random_form::<Rational>(6, 3, seed));
    }
    assert_ne!(
        fixtures::random_double_form::<Rational>(4, 2, 1, 1),
        fixtures::random_double_form::<Rational>(4, 2, 1, 2)
    );
}

#[test]
fn float_and_exact_fixtures_agree() {
    let a: DoubleForm<Rational> = fixtures::random_bianchi(4, 2, 2, 9);
    let b: DoubleForm<f64> = fixtures::random_bianchi(4, 2, 2, 9);
    for (x, y) in a.entries().iter().zip(b.entries()) {
        assert_eq!(x.to_f64(), *y);
    }
}
