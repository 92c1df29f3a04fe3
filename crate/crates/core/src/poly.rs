//! Univariate polynomials recovered by exact interpolation, and labelled
//! characteristic polynomials whose coefficients may be scalars or forms.

use crate::dform::DoubleForm;
use crate::error::Result;
use crate::scalar::Scalar;

/// Coefficients in ascending powers of the variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    /// The unique polynomial of degree `< xs.len()` through the given points
    /// (Newton divided differences, expanded to monomial form).
    pub fn interpolate(xs: &[S], ys: &[S]) -> Self {
        assert_eq!(xs.len(), ys.len(), "one value per node");
        let m = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..m {
            for i in (level..m).rev() {
                dd[i] = (dd[i].clone() - dd[i - 1].clone())
                    / (xs[i].clone() - xs[i - level].clone());
            }
        }
        // Horner on the Newton form
        let mut coeffs = vec![S::zero(); m];
        for i in (0..m).rev() {
            let mut next = vec![S::zero(); m];
            for (d, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if d + 1 < m {
                    next[d + 1] = next[d + 1].clone() + c.clone();
                }
                next[d] = next[d].clone() - c.clone() * xs[i].clone();
            }
            next[0] = next[0].clone() + dd[i].clone();
            coeffs = next;
        }
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// Interpolation at the integer nodes `0, 1, .., values.len()-1`.
    pub fn interpolate_at_integers(values: &[S]) -> Self {
        let xs: Vec<S> = (0..values.len()).map(|i| S::from_i64(i as i64)).collect();
        Self::interpolate(&xs, values)
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, d: usize) -> S {
        self.coeffs.get(d).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Value of the first derivative at zero.
    pub fn derivative_at_zero(&self) -> S {
        self.coeff(1)
    }
}

/// `f'(0)` for a polynomial `f` of at most the given degree.
///
/// Exact scalars sample at `t = 0..=degree`. Floating-point samples are taken
/// at evenly spaced nodes in `[-1/2, 1/2]` instead, where the interpolation
/// is far better conditioned.
pub fn derivative_at_zero<S: Scalar>(degree: usize, mut f: impl FnMut(S) -> Result<S>) -> Result<S> {
    if degree == 0 {
        return Ok(S::zero());
    }
    let xs: Vec<S> = if S::EXACT {
        (0..=degree).map(|t| S::from_i64(t as i64)).collect()
    } else {
        let d = degree as i64;
        (0..=d).map(|j| S::from_i64(2 * j - d) / S::from_i64(2 * d)).collect()
    };
    let values = xs.iter().map(|x| f(x.clone())).collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::interpolate(&xs, &values).derivative_at_zero())
}

/// Entrywise interpolation of form-valued samples taken at `λ = 0, 1, ..`.
pub fn interpolate_forms<S: Scalar>(samples: &[DoubleForm<S>]) -> Result<Vec<DoubleForm<S>>> {
    let first = &samples[0];
    let (n, p, q) = (first.n(), first.p(), first.q());
    let len = first.entries().len();
    let m = samples.len();
    let mut out = vec![DoubleForm::zeros(n, p, q)?; m];
    for e in 0..len {
        let ys: Vec<S> = samples.iter().map(|s| s.entries()[e].clone()).collect();
        let poly = Polynomial::interpolate_at_integers(&ys);
        for (d, form) in out.iter_mut().enumerate() {
            *form.at_mut(e / form.cols(), e % form.cols()) = poly.coeff(d);
        }
    }
    Ok(out)
}

/// A characteristic polynomial in `λ`, coefficients in ascending powers,
/// tagged with the invariant family that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<T> {
    pub family: &'static str,
    pub coeffs: Vec<T>,
}

impl<T> CharPoly<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn recovers_cubic() {
        // 2 - 3x + x^3 / 2
        let f = |x: i64| Rational::from_ratio(4 - 6 * x + x * x * x, 2);
        let ys: Vec<_> = (0..6).map(f).collect();
        let p = Polynomial::interpolate_at_integers(&ys);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeffs, vec![q(2), q(-3), q(0), Rational::from_ratio(1, 2)]);
        assert_eq!(p.eval(&q(7)), f(7));
        assert_eq!(p.derivative_at_zero(), q(-3));
    }

    #[test]
    fn arbitrary_nodes() {
        let xs = vec![q(-2), q(5), Rational::from_ratio(1, 3)];
        let ys: Vec<_> = xs.iter().map(|x| x.clone() * x.clone() - q(1)).collect();
        let p = Polynomial::interpolate(&xs, &ys);
        assert_eq!(p.coeffs, vec![q(-1), q(0), q(1)]);
    }

    #[test]
    fn constant_and_zero() {
        assert_eq!(Polynomial::interpolate_at_integers(&[q(0), q(0)]).degree(), 0);
        let d = derivative_at_zero::<Rational>(2, |t| Ok(t.clone() * t.clone() + q(4) * t)).unwrap();
        assert_eq!(d, q(4));
    }
}
