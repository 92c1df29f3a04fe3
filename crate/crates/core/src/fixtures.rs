//! Deterministic test tensors.
//!
//! Every generator is a pure function of its seed and parameters. Randomness
//! comes from SplitMix64 (Steele, Lea and Flood): the state advances by
//! `0x9E3779B97F4A7C15` and each output is the state passed through the
//! mixer `z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
//! z ^ z>>31`. The seed is the initial state. An entry is `(next % 7) - 3`, an
//! integer in `[-3, 3]`, and entries are drawn in row-major order over the
//! positions the symmetry leaves free.
//!
//! Bianchi fixtures are sums of exterior products of symmetric bilinear forms.
//! Such sums satisfy the first Bianchi identity, but they are not known to
//! exhaust all Bianchi-symmetric forms.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::dform::DoubleForm;
use crate::exterior::ExteriorForm;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Skew,
    General,
}

/// A SplitMix64 stream whose initial state is `seed`.
pub fn stream(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Next entry in `[-3, 3]`.
pub fn draw(rng: &mut SplitMix64) -> i64 {
    (rng.next_u64() % 7) as i64 - 3
}

fn bilinear_from<S: Scalar>(n: usize, symmetry: Symmetry, rng: &mut SplitMix64) -> DoubleForm<S> {
    let mut m = vec![S::zero(); n * n];
    for i in 0..n {
        let start = match symmetry {
            Symmetry::General => 0,
            Symmetry::Symmetric => i,
            Symmetry::Skew => i + 1,
        };
        for j in start..n {
            let v = S::from_i64(draw(rng));
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => m[j * n + i] = v.clone(),
                Symmetry::Skew => m[j * n + i] = -v.clone(),
            }
            m[i * n + j] = v;
        }
    }
    DoubleForm::from_matrix(n, 1, 1, m).expect("square matrix")
}

pub fn random_bilinear<S: Scalar>(n: usize, seed: u64, symmetry: Symmetry) -> DoubleForm<S> {
    bilinear_from(n, symmetry, &mut stream(seed))
}

/// `Σ_terms h_1 h_2 … h_p` with independent random symmetric `h_i`.
/// With `p = 1` and one term this is `random_bilinear(n, seed, Symmetric)`.
pub fn random_bianchi<S: Scalar>(n: usize, p: usize, terms: usize, seed: u64) -> DoubleForm<S> {
    let mut rng = stream(seed);
    let mut out = DoubleForm::zeros(n, p, p).expect("small dimension");
    for _ in 0..terms.max(1) {
        let mut prod = DoubleForm::scalar(n, S::one());
        for _ in 0..p {
            let h = bilinear_from(n, Symmetry::Symmetric, &mut rng);
            prod = prod.wedge(&h).expect("degrees fit");
        }
        out.add_scaled(&S::one(), &prod).expect("same shape");
    }
    out
}

/// `R = κ g^2 / 2`, the curvature form of a space of constant curvature `κ`.
pub fn constant_curvature<S: Scalar>(n: usize, kappa: S) -> DoubleForm<S> {
    let g = DoubleForm::<S>::metric(n);
    g.wedge(&g).expect("degrees fit").scale(&(kappa / S::from_i64(2)))
}

/// `u ⊗ u` for a random vector `u`.
pub fn rank_one<S: Scalar>(n: usize, seed: u64) -> DoubleForm<S> {
    let mut rng = stream(seed);
    let u: Vec<i64> = (0..n).map(|_| draw(&mut rng)).collect();
    let m = (0..n * n).map(|e| S::from_i64(u[e / n] * u[e % n])).collect();
    DoubleForm::from_matrix(n, 1, 1, m).expect("square matrix")
}

/// A single nilpotent Jordan block: ones directly above the diagonal.
pub fn nilpotent<S: Scalar>(n: usize) -> DoubleForm<S> {
    let m = (0..n * n)
        .map(|e| if e % n == e / n + 1 { S::one() } else { S::zero() })
        .collect();
    DoubleForm::from_matrix(n, 1, 1, m).expect("square matrix")
}

/// A Bianchi `(2,2)` form with a rank-one factor, `(u ⊗ u) h`.
pub fn degenerate_bianchi<S: Scalar>(n: usize, seed: u64) -> DoubleForm<S> {
    let u = rank_one::<S>(n, seed);
    let h = random_bilinear::<S>(n, seed ^ 0x5eed, Symmetry::Symmetric);
    u.wedge(&h).expect("degrees fit")
}

/// A random positive-definite metric `A^t A + I`.
pub fn random_metric<S: Scalar>(n: usize, seed: u64) -> DoubleForm<S> {
    let a = random_bilinear::<S>(n, seed, Symmetry::General);
    a.transpose().compose(&a).expect("same shape").add(&DoubleForm::metric(n)).expect("same shape")
}

/// An exterior `k`-form with coefficients in `[-3, 3]`.
pub fn random_form<S: Scalar>(n: usize, k: usize, seed: u64) -> ExteriorForm<S> {
    let mut rng = stream(seed);
    let len = crate::scalar::binomial(n, k) as usize;
    let coeffs = (0..len).map(|_| S::from_i64(draw(&mut rng))).collect();
    ExteriorForm::from_coeffs(n, k, coeffs).expect("coefficient count matches")
}

/// A `(p,q)` double form with independent entries in `[-3, 3]`.
pub fn random_double_form<S: Scalar>(n: usize, p: usize, q: usize, seed: u64) -> DoubleForm<S> {
    let mut rng = stream(seed);
    let mut out = DoubleForm::zeros(n, p, q).expect("small dimension");
    for r in 0..out.rows() {
        for c in 0..out.cols() {
            *out.at_mut(r, c) = S::from_i64(draw(&mut rng));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};
    use crate::scalar::Rational;

    #[test]
    fn splitmix_reference_stream() {
        let mut rng = stream(1234567);
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
    fn symmetry_and_determinism() {
        for n in 1..=6 {
            let s = random_bilinear::<Rational>(n, 9, Symmetry::Symmetric);
            assert!(s.is_symmetric());
            let k = random_bilinear::<Rational>(n, 9, Symmetry::Skew);
            assert!(k.is_skew());
            let g1 = random_bilinear::<Rational>(n, 9, Symmetry::General);
            assert_eq!(g1, random_bilinear::<Rational>(n, 9, Symmetry::General));
            assert!(g1.entries().iter().all(|x| x.abs() <= Rational::from_i64(3)));
        }
    }

    #[test]
    fn bianchi_fixtures() {
        assert_eq!(
            random_bianchi::<Rational>(4, 1, 1, 3),
            random_bilinear::<Rational>(4, 3, Symmetry::Symmetric)
        );
        for n in 2..=5 {
            for p in 1..=2 {
                let r = random_bianchi::<Rational>(n, p, 2, 17);
                assert!(r.is_symmetric());
                assert!(r.bianchi_residual().unwrap().is_zero());
            }
            let d = degenerate_bianchi::<Rational>(n, 4);
            assert!(d.bianchi_residual().unwrap().is_zero());
        }
    }

    #[test]
    fn constant_curvature_values() {
        let zero = constant_curvature::<Rational>(4, Rational::from_i64(0));
        assert!(zero.is_zero());
        let r = constant_curvature::<Rational>(5, Rational::from_i64(1));
        let c2 = r.contract_times(2);
        assert_eq!(c2.as_scalar().unwrap(), &Rational::from_i64(20));
    }

    #[test]
    fn degenerate_shapes() {
        let u = rank_one::<Rational>(4, 2);
        assert!(u.is_symmetric());
        assert!(u.power(2).unwrap().is_zero());
        let j = nilpotent::<Rational>(4);
        assert!(j.compose_power(4).unwrap().is_zero());
        assert!(crate::linalg::is_positive_definite(random_metric::<Rational>(4, 1).entries(), 4));
    }
}
