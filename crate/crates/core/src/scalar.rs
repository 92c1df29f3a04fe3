//! Field abstraction shared by every tensor type.
//!
//! Two realizations ship: [`Rational`] (arbitrary precision, no rounding) for
//! identity verification, and `f64` for quick scale runs where residuals are
//! compared with a relative tolerance of [`FLOAT_RELATIVE_TOLERANCE`].

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Relative tolerance used when comparing float-mode residuals.
pub const FLOAT_RELATIVE_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    /// Short tag used in file headers and reports ("rational" / "float64").
    const NAME: &'static str;
    /// True when arithmetic performs no rounding.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn parse(s: &str) -> Option<Self>;
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Rational {
    const NAME: &'static str = "rational";
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.contains('/') {
            let r = BigRational::from_str(s).ok()?;
            Some(r)
        } else {
            BigInt::from_str(s).ok().map(BigRational::from_integer)
        }
    }
}

impl Scalar for f64 {
    const NAME: &'static str = "float64";
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?)
        } else {
            s.parse().ok()
        }
    }

    fn render(&self) -> String {
        format!("{self:e}")
    }
}

/// `n!` as an exact integer-valued scalar.
pub fn factorial<S: Scalar>(n: usize) -> S {
    let mut acc = S::one();
    for i in 2..=n {
        acc = acc * S::from_i64(i as i64);
    }
    acc
}

/// Binomial coefficient as a machine integer; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// `(-1)^e` as a scalar.
pub fn sign_pow<S: Scalar>(e: usize) -> S {
    if e.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

/// Integer power of a scalar.
pub fn powi<S: Scalar>(x: &S, e: usize) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial::<Rational>(5), Rational::from_i64(120));
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn rational_parse_and_render() {
        let r = Rational::parse("-6/4").unwrap();
        assert_eq!(r, Rational::from_ratio(-3, 2));
        assert_eq!(r.render(), "-3/2");
        assert_eq!(Rational::parse("7").unwrap().render(), "7");
        assert!(Rational::parse("x/2").is_none());
        assert_eq!(f64::parse("1/4"), Some(0.25));
    }
}
