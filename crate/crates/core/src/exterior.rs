//! Ordinary exterior forms and `(k, .., k)` multiforms.

use crate::dform::DoubleForm;
use crate::error::{Error, Result};
use crate::multiindex::{full_mask, mask_merge_sign, rank_mask, subset_masks, MultiIndex, MAX_DIM};
use crate::scalar::{binomial, Scalar};

/// An element of `Λ^k V*`, stored as its `C(n,k)` coefficients on the
/// lex-ordered basis `e^I`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorForm<S> {
    n: usize,
    k: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> ExteriorForm<S> {
    pub fn zeros(n: usize, k: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        Ok(Self {
            n,
            k,
            coeffs: vec![S::zero(); binomial(n, k) as usize],
        })
    }

    pub fn from_coeffs(n: usize, k: usize, coeffs: Vec<S>) -> Result<Self> {
        let mut out = Self::zeros(n, k)?;
        if coeffs.len() != out.coeffs.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} coefficients", out.coeffs.len()),
                got: format!("{} coefficients", coeffs.len()),
            });
        }
        out.coeffs = coeffs;
        Ok(out)
    }

    /// The basis form `e^I`.
    pub fn basis(i: &MultiIndex) -> Self {
        let mut out = Self::zeros(i.n(), i.len()).expect("valid multi-index");
        out.coeffs[i.rank()] = S::one();
        out
    }

    pub fn scalar(n: usize, s: S) -> Self {
        Self {
            n,
            k: 0,
            coeffs: vec![s],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn get(&self, i: &MultiIndex) -> &S {
        &self.coeffs[i.rank()]
    }

    pub fn set(&mut self, i: &MultiIndex, v: S) {
        let r = i.rank();
        self.coeffs[r] = v;
    }

    pub fn as_scalar(&self) -> Option<&S> {
        (self.k == 0).then(|| &self.coeffs[0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = x.clone() * s.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.k != other.k {
            return Err(Error::ShapeMismatch {
                expected: format!("degree {}", self.k),
                got: format!("degree {}", other.k),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self { coeffs, ..self.clone() })
    }

    /// `(a ∧ b)_K = Σ_{I ⊔ J = K} sign(I, J) a_I b_J`. Degrees above `n` give
    /// an empty (zero) form.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Self::zeros(n, self.k + other.k)?;
        if out.coeffs.is_empty() {
            return Ok(out);
        }
        let ma = subset_masks(n, self.k);
        let mb = subset_masks(n, other.k);
        for (ia, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ib, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let Some(s) = mask_merge_sign(ma[ia], mb[ib]) else {
                    continue;
                };
                let slot = &mut out.coeffs[rank_mask(n, ma[ia] | mb[ib])];
                let t = a.clone() * b.clone();
                *slot = if s > 0 { slot.clone() + t } else { slot.clone() - t };
            }
        }
        Ok(out)
    }

    /// `a^q` under the wedge product (`a^0 = 1`).
    pub fn power(&self, q: usize) -> Result<Self> {
        let mut acc = Self::scalar(self.n, S::one());
        for _ in 0..q {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Hodge star for the standard orientation: `(*a)_{I^c} = ε_I a_I`.
    pub fn hodge(&self) -> Self {
        let n = self.n;
        if self.k > n {
            return Self::scalar(n, S::zero());
        }
        let mut out = Self::zeros(n, n - self.k).expect("valid dimension");
        let full = full_mask(n);
        for (i, m) in subset_masks(n, self.k).into_iter().enumerate() {
            let v = &self.coeffs[i];
            if v.is_zero() {
                continue;
            }
            let s = mask_merge_sign(m, full & !m).unwrap();
            out.coeffs[rank_mask(n, full & !m)] = if s > 0 { v.clone() } else { -v.clone() };
        }
        out
    }
}

/// An element of `Λ^k V* ⊗ .. ⊗ Λ^k V*` (`r` slots), stored densely with the
/// first slot varying slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiForm<S> {
    n: usize,
    k: usize,
    r: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> MultiForm<S> {
    pub fn zeros(n: usize, k: usize, r: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        let axis = binomial(n, k) as usize;
        Ok(Self {
            n,
            k,
            r,
            coeffs: vec![S::zero(); axis.pow(r as u32)],
        })
    }

    pub fn from_coeffs(n: usize, k: usize, r: usize, coeffs: Vec<S>) -> Result<Self> {
        let mut out = Self::zeros(n, k, r)?;
        if coeffs.len() != out.coeffs.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} coefficients", out.coeffs.len()),
                got: format!("{} coefficients", coeffs.len()),
            });
        }
        out.coeffs = coeffs;
        Ok(out)
    }

    /// `φ1 ⊗ .. ⊗ φr` for forms of equal degree.
    pub fn tensor(factors: &[ExteriorForm<S>]) -> Result<Self> {
        let first = factors.first().ok_or(Error::Arity { expected: 1, got: 0 })?;
        let (n, k) = (first.n, first.k);
        for f in factors {
            if f.n != n {
                return Err(Error::DimensionMismatch(n, f.n));
            }
            if f.k != k {
                return Err(Error::ShapeMismatch {
                    expected: format!("slot degree {k}"),
                    got: format!("slot degree {}", f.k),
                });
            }
        }
        let mut coeffs = vec![S::one()];
        for f in factors {
            coeffs = coeffs
                .iter()
                .flat_map(|a| f.coeffs.iter().map(move |b| a.clone() * b.clone()))
                .collect();
        }
        Self::from_coeffs(n, k, factors.len(), coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slot_degree(&self) -> usize {
        self.k
    }

    pub fn slots(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    fn axis(&self) -> usize {
        binomial(self.n, self.k) as usize
    }

    fn offset(&self, idx: &[MultiIndex]) -> usize {
        assert_eq!(idx.len(), self.r, "one multi-index per slot");
        let axis = self.axis();
        idx.iter().fold(0, |acc, i| {
            debug_assert_eq!(i.len(), self.k);
            acc * axis + i.rank()
        })
    }

    pub fn get(&self, idx: &[MultiIndex]) -> &S {
        &self.coeffs[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[MultiIndex], v: S) {
        let o = self.offset(idx);
        self.coeffs[o] = v;
    }

    pub fn as_scalar(&self) -> Option<&S> {
        (self.k == 0 || self.r == 0).then(|| &self.coeffs[0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = x.clone() * s.clone();
        }
        out
    }

    fn slot_masks(&self, flat: usize, masks: &[u64]) -> Vec<u64> {
        let axis = masks.len();
        let mut out = vec![0u64; self.r];
        let mut rest = flat;
        for slot in (0..self.r).rev() {
            out[slot] = masks[rest % axis];
            rest /= axis;
        }
        out
    }

    /// Slotwise wedge: `(θ1⊗..⊗θr)(φ1⊗..⊗φr) = (θ1∧φ1)⊗..⊗(θr∧φr)`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.r != other.r {
            return Err(Error::ShapeMismatch {
                expected: format!("{} slots", self.r),
                got: format!("{} slots", other.r),
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n, self.k + other.k, self.r)?;
        if out.coeffs.is_empty() {
            return Ok(out);
        }
        let out_axis = out.axis();
        let ma = subset_masks(n, self.k);
        let mb = subset_masks(n, other.k);
        let rhs: Vec<(Vec<u64>, &S)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (other.slot_masks(i, &mb), v))
            .collect();
        for (ia, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sa = self.slot_masks(ia, &ma);
            'pair: for (sb, b) in &rhs {
                let mut sign = 1i8;
                let mut flat = 0usize;
                for (x, y) in sa.iter().zip(sb) {
                    match mask_merge_sign(*x, *y) {
                        Some(s) => sign *= s,
                        None => continue 'pair,
                    }
                    flat = flat * out_axis + rank_mask(n, x | y);
                }
                let t = a.clone() * (*b).clone();
                let slot = &mut out.coeffs[flat];
                *slot = if sign > 0 { slot.clone() + t } else { slot.clone() - t };
            }
        }
        Ok(out)
    }

    pub fn power(&self, p: usize) -> Result<Self> {
        let mut acc = Self::zeros(self.n, 0, self.r)?;
        acc.coeffs[0] = S::one();
        for _ in 0..p {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Slotwise Hodge star `*(φ1⊗..⊗φr) = (*φ1)⊗..⊗(*φr)`.
    pub fn hodge(&self) -> Self {
        let n = self.n;
        if self.k > n {
            let mut z = Self::zeros(n, 0, self.r).expect("valid dimension");
            z.coeffs[0] = S::zero();
            return z;
        }
        let mut out = Self::zeros(n, n - self.k, self.r).expect("valid dimension");
        let full = full_mask(n);
        let masks = subset_masks(n, self.k);
        let axis = masks.len();
        for (i, v) in self.coeffs.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let sm = self.slot_masks(i, &masks);
            let mut sign = 1i8;
            let mut flat = 0usize;
            for m in &sm {
                sign *= mask_merge_sign(*m, full & !m).unwrap();
                flat = flat * axis + rank_mask(n, full & !m);
            }
            out.coeffs[flat] = if sign > 0 { v.clone() } else { -v.clone() };
        }
        out
    }

    /// View a 2-slot multiform `(k,k)` as the double form with the same values.
    pub fn to_double_form(&self) -> Result<DoubleForm<S>> {
        if self.r != 2 {
            return Err(Error::ShapeMismatch {
                expected: "2 slots".into(),
                got: format!("{} slots", self.r),
            });
        }
        DoubleForm::from_matrix(self.n, self.k, self.k, self.coeffs.clone())
    }

    /// The 2-slot multiform of a `(k,k)` double form.
    pub fn from_double_form(w: &DoubleForm<S>) -> Result<Self> {
        if w.p() != w.q() {
            return Err(Error::ShapeMismatch {
                expected: "bidegree (k,k)".into(),
                got: format!("bidegree {:?}", w.bidegree()),
            });
        }
        Self::from_coeffs(w.n(), w.p(), 2, w.entries().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::subsets;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn e(n: usize, ix: &[usize]) -> ExteriorForm<Rational> {
        ExteriorForm::basis(&MultiIndex::new(n, ix).unwrap())
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(2, &[0]).wedge(&e(2, &[1])).unwrap(), e(2, &[0, 1]));
        assert_eq!(e(2, &[1]).wedge(&e(2, &[0])).unwrap(), e(2, &[0, 1]).scale(&r(-1)));
        let w = e(4, &[0, 1]).add(&e(4, &[2, 3])).unwrap();
        assert_eq!(w.wedge(&w).unwrap(), e(4, &[0, 1, 2, 3]).scale(&r(2)));
        assert!(e(3, &[0, 1]).wedge(&e(3, &[1, 2])).unwrap().is_zero());
        assert!(e(2, &[0]).wedge(&e(3, &[0])).is_err());
    }

    #[test]
    fn hodge_examples() {
        for n in 0..=5 {
            let one = ExteriorForm::scalar(n, r(1));
            assert_eq!(one.hodge(), ExteriorForm::basis(&MultiIndex::full(n)));
        }
        assert_eq!(e(2, &[0]).hodge(), e(2, &[1]));
        assert_eq!(e(2, &[1]).hodge(), e(2, &[0]).scale(&r(-1)));
    }

    #[test]
    fn double_star_sign_exhaustive() {
        for n in 0..=5 {
            for k in 0..=n {
                let s = if (k * (n - k)) % 2 == 0 { r(1) } else { r(-1) };
                for i in subsets(n, k) {
                    let b = ExteriorForm::<Rational>::basis(&i);
                    assert_eq!(b.hodge().hodge(), b.scale(&s));
                }
            }
        }
    }

    #[test]
    fn multiform_examples() {
        // r = 1 reduces to ordinary forms
        let a = MultiForm::tensor(&[e(3, &[0])]).unwrap();
        let b = MultiForm::tensor(&[e(3, &[2])]).unwrap();
        assert_eq!(a.wedge(&b).unwrap().coeffs(), e(3, &[0]).wedge(&e(3, &[2])).unwrap().coeffs());
        assert_eq!(a.hodge().coeffs(), e(3, &[0]).hodge().coeffs());

        let x = MultiForm::tensor(&[e(2, &[0]), e(2, &[0])]).unwrap();
        let y = MultiForm::tensor(&[e(2, &[1]), e(2, &[1])]).unwrap();
        let top = MultiForm::tensor(&[e(2, &[0, 1]), e(2, &[0, 1])]).unwrap();
        assert_eq!(x.wedge(&y).unwrap(), top);

        let z = MultiForm::tensor(&[e(2, &[0]), e(2, &[1])]).unwrap();
        let starred = MultiForm::tensor(&[e(2, &[1]), e(2, &[0]).scale(&r(-1))]).unwrap();
        assert_eq!(z.hodge(), starred);

        assert!(x.wedge(&MultiForm::tensor(&[e(2, &[0])]).unwrap()).is_err());
    }
}
