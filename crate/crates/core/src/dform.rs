//! Double forms: elements of `Λ^p V* ⊗ Λ^q V*` over a Euclidean `V = R^n`.
//!
//! A `(p, q)` double form is stored as the dense `C(n,p) × C(n,q)` matrix of
//! its values on basis multi-vectors, `entry(I, J) = ω(e_I, e_J)`, rows and
//! columns in lexicographic multi-index order. The identification with
//! multilinear forms uses the shuffle convention, so that `h^k(e_I, e_J)` is
//! `k!` times the `I × J` minor of `h` and `g^k / k!` is the identity on `Λ^k`.
//!
//! Bidegrees larger than `n` are allowed and have no entries; they appear as
//! the (zero) results of products that overflow the top degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::multiindex::{mask_merge_sign, rank_mask, subset_masks, MultiIndex, MAX_DIM};
use crate::scalar::{binomial, factorial, sign_pow, Scalar};

#[derive(Clone, PartialEq)]
pub struct DoubleForm<S> {
    n: usize,
    p: usize,
    q: usize,
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> fmt::Debug for DoubleForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DoubleForm(n={}, ({}, {}))", self.n, self.p, self.q)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> DoubleForm<S> {
    pub fn zeros(n: usize, p: usize, q: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        let rows = binomial(n, p) as usize;
        let cols = binomial(n, q) as usize;
        Ok(Self {
            n,
            p,
            q,
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        })
    }

    /// Builds a form from its row-major matrix in the lex multi-index basis.
    pub fn from_matrix(n: usize, p: usize, q: usize, entries: Vec<S>) -> Result<Self> {
        let mut out = Self::zeros(n, p, q)?;
        if entries.len() != out.entries.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", out.entries.len()),
                got: format!("{} entries", entries.len()),
            });
        }
        out.entries = entries;
        Ok(out)
    }

    pub fn from_fn(
        n: usize,
        p: usize,
        q: usize,
        mut f: impl FnMut(&MultiIndex, &MultiIndex) -> S,
    ) -> Result<Self> {
        let mut out = Self::zeros(n, p, q)?;
        let rm = subset_masks(n, p);
        let cm = subset_masks(n, q);
        for (r, &a) in rm.iter().enumerate() {
            for (c, &b) in cm.iter().enumerate() {
                out.entries[r * out.cols + c] =
                    f(&MultiIndex::from_bits(n, a), &MultiIndex::from_bits(n, b));
            }
        }
        Ok(out)
    }

    /// A bilinear form (`(1,1)` double form) from its `n × n` matrix.
    pub fn bilinear(matrix: &[Vec<S>]) -> Result<Self> {
        let n = matrix.len();
        if let Some(bad) = matrix.iter().find(|row| row.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: format!("{n} columns"),
                got: format!("{} columns", bad.len()),
            });
        }
        Self::from_matrix(n, 1, 1, matrix.iter().flatten().cloned().collect())
    }

    /// The `(0,0)` double form with value `s`.
    pub fn scalar(n: usize, s: S) -> Self {
        let mut out = Self::zeros(n, 0, 0).expect("n checked by caller");
        out.entries[0] = s;
        out
    }

    /// The Euclidean metric `g`, whose matrix is the identity.
    pub fn metric(n: usize) -> Self {
        Self::identity(n, 1).expect("valid dimension")
    }

    /// `g^k`, whose matrix is `k!` times the identity on `Λ^k`.
    pub fn metric_power(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::DegreeOutOfRange {
                what: "metric power",
                value: k,
                max: n,
            });
        }
        Ok(Self::identity(n, k)?.scale(&factorial(k)))
    }

    /// Identity of the composition algebra in bidegree `(p,p)`, i.e. `g^p/p!`.
    pub fn identity(n: usize, p: usize) -> Result<Self> {
        let mut out = Self::zeros(n, p, p)?;
        for i in 0..out.rows {
            out.entries[i * out.cols + i] = S::one();
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn at(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.cols + col]
    }

    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut S {
        &mut self.entries[row * self.cols + col]
    }

    /// `ω(e_I, e_J)`.
    pub fn get(&self, i: &MultiIndex, j: &MultiIndex) -> &S {
        debug_assert_eq!((i.len(), j.len()), (self.p, self.q));
        self.at(i.rank(), j.rank())
    }

    pub fn set(&mut self, i: &MultiIndex, j: &MultiIndex, v: S) {
        debug_assert_eq!((i.len(), j.len()), (self.p, self.q));
        let (r, c) = (i.rank(), j.rank());
        *self.at_mut(r, c) = v;
    }

    /// The value of a `(0,0)` form.
    pub fn as_scalar(&self) -> Option<&S> {
        (self.p == 0 && self.q == 0).then(|| &self.entries[0])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Largest absolute entry (zero for an empty form).
    pub fn max_abs(&self) -> S {
        self.entries
            .iter()
            .map(|x| x.abs())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn is_symmetric(&self) -> bool {
        self.p == self.q
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    pub fn is_skew(&self) -> bool {
        self.p == self.q
            && (0..self.rows).all(|r| (0..=r).all(|c| *self.at(r, c) == -self.at(c, r).clone()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            *x = x.clone() * s.clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            *x = -x.clone();
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.bidegree() != other.bidegree() {
            return Err(Error::ShapeMismatch {
                expected: format!("bidegree {:?}", self.bidegree()),
                got: format!("bidegree {:?}", other.bidegree()),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x = x.clone() + y.clone();
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x = x.clone() - y.clone();
        }
        Ok(out)
    }

    /// `self + s·other`, in place.
    pub fn add_scaled(&mut self, s: &S, other: &Self) -> Result<()> {
        self.check_same_shape(other)?;
        if s.is_zero() {
            return Ok(());
        }
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            if !y.is_zero() {
                *x = x.clone() + s.clone() * y.clone();
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        Self {
            n: self.n,
            p: self.q,
            q: self.p,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Exterior product of double forms: `(θ1⊗θ2)(θ3⊗θ4) = (θ1∧θ3)⊗(θ2∧θ4)`.
    ///
    /// On basis values, `(ω1ω2)(e_K, e_L)` is the signed sum of
    /// `ω1(e_I, e_J) ω2(e_I', e_J')` over the splittings `K = I ⊔ I'`,
    /// `L = J ⊔ J'`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let (p, q) = (self.p + other.p, self.q + other.q);
        let mut out = Self::zeros(n, p, q)?;
        if out.entries.is_empty() {
            return Ok(out);
        }

        let rows1 = subset_masks(n, self.p);
        let cols1 = subset_masks(n, self.q);
        let rows2 = subset_masks(n, other.p);
        let cols2 = subset_masks(n, other.q);

        // nonzero columns of each row of `other`
        let sparse2: Vec<(u64, Vec<(u64, &S)>)> = (0..other.rows)
            .filter_map(|r| {
                let cols: Vec<(u64, &S)> = (0..other.cols)
                    .filter_map(|c| {
                        let v = other.at(r, c);
                        (!v.is_zero()).then_some((cols2[c], v))
                    })
                    .collect();
                (!cols.is_empty()).then_some((rows2[r], cols))
            })
            .collect();

        for r1 in 0..self.rows {
            let i = rows1[r1];
            for c1 in 0..self.cols {
                let a = self.at(r1, c1);
                if a.is_zero() {
                    continue;
                }
                let j = cols1[c1];
                for (i2, cols) in &sparse2 {
                    let Some(s1) = mask_merge_sign(i, *i2) else {
                        continue;
                    };
                    let k = rank_mask(n, i | i2);
                    for (j2, b) in cols {
                        let Some(s2) = mask_merge_sign(j, *j2) else {
                            continue;
                        };
                        let l = rank_mask(n, j | j2);
                        let prod = a.clone() * (*b).clone();
                        let slot = out.at_mut(k, l);
                        if s1 * s2 > 0 {
                            *slot = slot.clone() + prod;
                        } else {
                            *slot = slot.clone() - prod;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exterior power `ω^k` (`ω^0` is the scalar 1).
    pub fn power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::scalar(self.n, S::one());
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Ricci contraction `c: D^{p,q} → D^{p-1,q-1}`,
    /// `cω(e_I, e_J) = Σ_j ω(e_j ∧ e_I, e_j ∧ e_J)`.
    ///
    /// A form with `p = 0` or `q = 0` contracts to zero.
    pub fn contract(&self) -> Self {
        let n = self.n;
        let (p, q) = (self.p.saturating_sub(1), self.q.saturating_sub(1));
        let mut out = Self::zeros(n, p, q).expect("dimension already valid");
        if self.p == 0 || self.q == 0 {
            return out;
        }
        let rm = subset_masks(n, p);
        let cm = subset_masks(n, q);
        for (r, &i) in rm.iter().enumerate() {
            for (c, &j) in cm.iter().enumerate() {
                let mut acc = S::zero();
                for x in 0..n {
                    let bit = 1u64 << x;
                    if i & bit != 0 || j & bit != 0 {
                        continue;
                    }
                    let v = self.at(rank_mask(n, i | bit), rank_mask(n, j | bit));
                    if v.is_zero() {
                        continue;
                    }
                    let s = mask_merge_sign(bit, i).unwrap() * mask_merge_sign(bit, j).unwrap();
                    if s > 0 {
                        acc = acc + v.clone();
                    } else {
                        acc = acc - v.clone();
                    }
                }
                out.entries[r * out.cols + c] = acc;
            }
        }
        out
    }

    /// `c^k ω`.
    pub fn contract_times(&self, k: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..k {
            acc = acc.contract();
        }
        acc
    }

    /// Contraction with respect to the inner product whose Gram matrix (in the
    /// canonical basis) is the symmetric positive-definite `(1,1)` form `metric`:
    /// `c_G ω(e_I, e_J) = Σ_{a,b} (G^{-1})_{ab} ω(e_a ∧ e_I, e_b ∧ e_J)`.
    pub fn contract_with_metric(&self, metric: &Self) -> Result<Self> {
        let inverse = metric_inverse(metric)?;
        Ok(self.contract_with_inverse(&inverse))
    }

    /// Same as [`DoubleForm::contract_with_metric`] given `G^{-1}` directly
    /// (row-major `n × n`).
    pub fn contract_with_inverse(&self, inverse: &[S]) -> Self {
        let n = self.n;
        assert_eq!(inverse.len(), n * n, "inverse metric must be n x n");
        let (p, q) = (self.p.saturating_sub(1), self.q.saturating_sub(1));
        let mut out = Self::zeros(n, p, q).expect("dimension already valid");
        if self.p == 0 || self.q == 0 {
            return out;
        }
        let rm = subset_masks(n, p);
        let cm = subset_masks(n, q);
        for (r, &i) in rm.iter().enumerate() {
            for (c, &j) in cm.iter().enumerate() {
                let mut acc = S::zero();
                for a in 0..n {
                    let ba = 1u64 << a;
                    if i & ba != 0 {
                        continue;
                    }
                    let ra = rank_mask(n, i | ba);
                    let sa = mask_merge_sign(ba, i).unwrap();
                    for b in 0..n {
                        let bb = 1u64 << b;
                        let w = &inverse[a * n + b];
                        if j & bb != 0 || w.is_zero() {
                            continue;
                        }
                        let v = self.at(ra, rank_mask(n, j | bb));
                        if v.is_zero() {
                            continue;
                        }
                        let t = w.clone() * v.clone();
                        if sa * mask_merge_sign(bb, j).unwrap() > 0 {
                            acc = acc + t;
                        } else {
                            acc = acc - t;
                        }
                    }
                }
                out.entries[r * out.cols + c] = acc;
            }
        }
        out
    }

    /// Double Hodge star `*ω(.,.) = (-1)^{(p+q)(n-p-q)} ω(*., *.)`, mapping
    /// `(p,q)` to `(n-p, n-q)`. With `*e_A = ε_A e_{A^c}` this reads
    /// `*ω(e_A, e_B) = (-1)^{(p+q)(n-p-q)} ε_A ε_B ω(e_{A^c}, e_{B^c})`.
    pub fn hodge(&self) -> Self {
        let n = self.n;
        if self.p > n || self.q > n {
            // nothing to dualize
            return Self::zeros(n, 0, 0).expect("valid dimension");
        }
        let (pa, qa) = (n - self.p, n - self.q);
        let mut out = Self::zeros(n, pa, qa).expect("valid dimension");
        let full = crate::multiindex::full_mask(n);
        let exp = (self.p + self.q) * n.abs_diff(self.p + self.q);
        let base: i8 = if exp.is_multiple_of(2) { 1 } else { -1 };
        let rm = subset_masks(n, pa);
        let cm = subset_masks(n, qa);
        let row_sign: Vec<i8> = rm
            .iter()
            .map(|&a| mask_merge_sign(a, full & !a).unwrap())
            .collect();
        let col_sign: Vec<i8> = cm
            .iter()
            .map(|&b| mask_merge_sign(b, full & !b).unwrap())
            .collect();
        for (r, &a) in rm.iter().enumerate() {
            let src_r = rank_mask(n, full & !a);
            for (c, &b) in cm.iter().enumerate() {
                let v = self.at(src_r, rank_mask(n, full & !b));
                if v.is_zero() {
                    continue;
                }
                let s = base * row_sign[r] * col_sign[c];
                out.entries[r * out.cols + c] = if s > 0 { v.clone() } else { -v.clone() };
            }
        }
        out
    }

    /// Inner product `⟨ω1, ω2⟩ = Σ_{I,J} ω1(e_I,e_J) ω2(e_I,e_J)`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let mut acc = S::zero();
        for (x, y) in self.entries.iter().zip(&other.entries) {
            if !x.is_zero() && !y.is_zero() {
                acc = acc + x.clone() * y.clone();
            }
        }
        Ok(acc)
    }

    /// `|ω|² = ⟨ω, ω⟩`.
    pub fn norm_squared(&self) -> S {
        self.inner(self).expect("same shape")
    }

    /// Inner product induced by a non-standard metric `G` on `V`:
    /// both arguments are paired through the compound matrices of `G^{-1}`.
    pub fn inner_with_metric(&self, other: &Self, metric: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let inverse = metric_inverse(metric)?;
        let ginv = Self::from_matrix(self.n, 1, 1, inverse)?;
        // compound matrix of G^{-1} on Λ^k is (G^{-1})^k / k!
        let cp = ginv.power(self.p)?.scale(&(S::one() / factorial::<S>(self.p)));
        let cq = ginv.power(self.q)?.scale(&(S::one() / factorial::<S>(self.q)));
        let left = linalg::matmul(&cp.entries, &other.entries, self.rows, self.rows, self.cols);
        let paired = linalg::matmul(&left, &cq.entries, self.rows, self.cols, self.cols);
        self.inner(&Self::from_matrix(self.n, self.p, self.q, paired)?)
    }

    /// Composition (Greub) product. For `ω1 ∈ (p,q)` and `ω2 ∈ (r,s)` the
    /// result is the `(r,q)` form with matrix `M(ω2)·M(ω1)`, zero unless `p = s`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = Self::zeros(self.n, other.p, self.q)?;
        if self.p != other.q {
            return Ok(out);
        }
        out.entries = linalg::matmul(&other.entries, &self.entries, other.rows, self.rows, self.cols);
        Ok(out)
    }

    /// `ω^{∘r}`; `r = 0` gives the composition identity of bidegree `(p,p)`.
    pub fn compose_power(&self, r: usize) -> Result<Self> {
        if self.p != self.q {
            return Err(Error::ShapeMismatch {
                expected: "square bidegree (p,p)".into(),
                got: format!("bidegree {:?}", self.bidegree()),
            });
        }
        let mut acc = Self::identity(self.n, self.p)?;
        for _ in 0..r {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Largest absolute value of the first Bianchi sum
    /// `Σ_j (-1)^j ω(x_1 ∧ .. x̂_j .. ∧ x_{p+1}, x_j ∧ y_1 ∧ .. ∧ y_{q-1})`
    /// over basis tuples. Zero iff `ω` satisfies the first Bianchi identity.
    pub fn bianchi_residual(&self) -> Result<S> {
        if self.p == 0 || self.q == 0 {
            return Err(Error::DegreeTooSmall {
                what: "bidegree component",
                value: self.p.min(self.q),
                min: 1,
            });
        }
        let n = self.n;
        if self.p + 1 > n || self.q > n {
            return Ok(S::zero());
        }
        let xs = subset_masks(n, self.p + 1);
        let ys = subset_masks(n, self.q - 1);
        let mut worst = S::zero();
        for &x in &xs {
            for &y in &ys {
                let mut acc = S::zero();
                for (pos, xj) in crate::multiindex::mask_indices(x).enumerate() {
                    let bit = 1u64 << xj;
                    let Some(s) = mask_merge_sign(bit, y) else {
                        continue;
                    };
                    let v = self.at(rank_mask(n, x & !bit), rank_mask(n, y | bit));
                    if v.is_zero() {
                        continue;
                    }
                    // (-1)^j with 1-based j
                    let sign = s * if pos % 2 == 0 { -1 } else { 1 };
                    if sign > 0 {
                        acc = acc + v.clone();
                    } else {
                        acc = acc - v.clone();
                    }
                }
                let a = acc.abs();
                if a > worst {
                    worst = a;
                }
            }
        }
        Ok(worst)
    }
}

/// `G^{-1}` for a symmetric positive-definite `(1,1)` metric form.
pub fn metric_inverse<S: Scalar>(metric: &DoubleForm<S>) -> Result<Vec<S>> {
    if metric.bidegree() != (1, 1) {
        return Err(Error::ShapeMismatch {
            expected: "metric of bidegree (1,1)".into(),
            got: format!("bidegree {:?}", metric.bidegree()),
        });
    }
    if !linalg::is_positive_definite(metric.entries(), metric.n()) {
        return Err(Error::NotPositiveDefinite);
    }
    linalg::invert(metric.entries(), metric.n())
}

/// `(-1)^{(p+q)(n-p-q)}`, the sign relating the two forms of the inner
/// product through the star.
pub fn star_sign<S: Scalar>(n: usize, p: usize, q: usize) -> S {
    sign_pow((p + q) * n.abs_diff(p + q))
}
