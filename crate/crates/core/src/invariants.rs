//! Invariant families of bilinear forms and of symmetric Bianchi double forms.
//!
//! Each family has a Hodge-star definition and, where one exists, an
//! expansion in powers of `g` and contractions. The `_contraction` variants
//! use the expansion, which also extends a family past the range where the
//! star formula makes sense; those variants assume a symmetric input.

use crate::dform::{metric_inverse, DoubleForm};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::poly::{derivative_at_zero, CharPoly};
use crate::scalar::{binomial, factorial, sign_pow, Scalar};

/// An inner product on `R^n`, given by its Gram matrix in the canonical basis.
#[derive(Clone, Debug)]
pub struct Metric<S: Scalar> {
    form: DoubleForm<S>,
    inverse: Option<Vec<S>>,
}

impl<S: Scalar> Metric<S> {
    pub fn euclidean(n: usize) -> Self {
        Self {
            form: DoubleForm::metric(n),
            inverse: None,
        }
    }

    /// Fails unless `g` is a symmetric positive-definite `(1,1)` form.
    pub fn new(g: &DoubleForm<S>) -> Result<Self> {
        let inverse = metric_inverse(g)?;
        Ok(Self {
            form: g.clone(),
            inverse: Some(inverse),
        })
    }

    /// A metric whose contraction uses the supplied inverse matrix as is.
    fn with_inverse(form: DoubleForm<S>, inverse: Vec<S>) -> Self {
        Self {
            form,
            inverse: Some(inverse),
        }
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn form(&self) -> &DoubleForm<S> {
        &self.form
    }

    pub fn contract(&self, w: &DoubleForm<S>) -> DoubleForm<S> {
        match &self.inverse {
            None => w.contract(),
            Some(inv) => w.contract_with_inverse(inv),
        }
    }

    pub fn contract_times(&self, w: &DoubleForm<S>, k: usize) -> DoubleForm<S> {
        (0..k).fold(w.clone(), |acc, _| self.contract(&acc))
    }

    /// `G^k` under the exterior product.
    pub fn power(&self, k: usize) -> Result<DoubleForm<S>> {
        match &self.inverse {
            None if k <= self.n() => DoubleForm::metric_power(self.n(), k),
            _ => self.form.power(k),
        }
    }

    pub fn inner(&self, a: &DoubleForm<S>, b: &DoubleForm<S>) -> Result<S> {
        match &self.inverse {
            None => a.inner(b),
            Some(_) => a.inner_with_metric(b, &self.form),
        }
    }
}

fn require_bilinear<S: Scalar>(h: &DoubleForm<S>) -> Result<()> {
    if h.bidegree() != (1, 1) {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (1,1)".into(),
            got: format!("bidegree {:?}", h.bidegree()),
        });
    }
    Ok(())
}

fn require_square<S: Scalar>(w: &DoubleForm<S>) -> Result<()> {
    if w.p() != w.q() {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (p,p)".into(),
            got: format!("bidegree {:?}", w.bidegree()),
        });
    }
    Ok(())
}

fn require_curvature<S: Scalar>(r: &DoubleForm<S>) -> Result<()> {
    if r.bidegree() != (2, 2) {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (2,2)".into(),
            got: format!("bidegree {:?}", r.bidegree()),
        });
    }
    Ok(())
}

fn require_symmetric<S: Scalar>(w: &DoubleForm<S>, what: &'static str) -> Result<()> {
    if !w.is_symmetric() {
        return Err(Error::NotSymmetric(what));
    }
    Ok(())
}

fn bound(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::DegreeOutOfRange { what, value, max });
    }
    Ok(())
}

fn inv_factorial<S: Scalar>(k: usize) -> S {
    S::one() / factorial::<S>(k)
}

/// `*(g^a ω)` scaled by `1/den`.
fn star_of_metric_product<S: Scalar>(w: &DoubleForm<S>, a: usize, den: S) -> Result<DoubleForm<S>> {
    let ga = DoubleForm::metric_power(w.n(), a)?;
    Ok(ga.wedge(w)?.hodge().scale(&(S::one() / den)))
}

fn scalar_of<S: Scalar>(w: DoubleForm<S>) -> S {
    w.as_scalar().cloned().expect("(0,0) form")
}

/// `s_k(h) = *(g^{n-k} h^k) / (k! (n-k)!)`; `s_0 = 1`.
pub fn s_k<S: Scalar>(h: &DoubleForm<S>, k: usize) -> Result<S> {
    require_bilinear(h)?;
    let n = h.n();
    bound("k", k, n)?;
    let den = factorial::<S>(k) * factorial::<S>(n - k);
    Ok(scalar_of(star_of_metric_product(&h.power(k)?, n - k, den)?))
}

/// `s_k(h) = c^k h^k / (k!)^2`.
pub fn s_k_contraction<S: Scalar>(h: &DoubleForm<S>, k: usize) -> Result<S> {
    require_bilinear(h)?;
    bound("k", k, h.n())?;
    let f = factorial::<S>(k);
    Ok(scalar_of(h.power(k)?.contract_times(k)) / (f.clone() * f))
}

/// The diagonal value `(g^k h^r)(e_I, e_I)` at a multi-index of size `k + r`.
pub fn sectional_value<S: Scalar>(h: &DoubleForm<S>, k: usize, r: usize, subset: &MultiIndex) -> Result<S> {
    require_bilinear(h)?;
    let n = h.n();
    bound("k + r", k + r, n)?;
    if subset.len() != k + r || subset.n() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("a {}-element subset of {n} indices", k + r),
            got: format!("{subset:?}"),
        });
    }
    let w = DoubleForm::metric_power(n, k)?.wedge(&h.power(r)?)?;
    Ok(w.get(subset, subset).clone())
}

/// Cofactor (Newton) transformation `t_k(h) = *(g^{n-1-k} h^k) / (k! (n-1-k)!)`.
pub fn t_k<S: Scalar>(h: &DoubleForm<S>, k: usize) -> Result<DoubleForm<S>> {
    require_bilinear(h)?;
    let n = h.n();
    if n == 0 {
        return Err(Error::DegreeTooSmall { what: "n", value: 0, min: 1 });
    }
    bound("k", k, n - 1)?;
    let den = factorial::<S>(k) * factorial::<S>(n - 1 - k);
    star_of_metric_product(&h.power(k)?, n - 1 - k, den)
}

/// `s_{(r,q)}(h) = *(g^{n-q-r} h^q) / (q! (n-q-r)!)` for `r ≤ n - q`.
pub fn s_rq_hodge<S: Scalar>(h: &DoubleForm<S>, r: usize, q: usize) -> Result<DoubleForm<S>> {
    require_bilinear(h)?;
    let n = h.n();
    bound("q", q, n)?;
    bound("r", r, n - q)?;
    let den = factorial::<S>(q) * factorial::<S>(n - q - r);
    star_of_metric_product(&h.power(q)?, n - q - r, den)
}

/// `s_{(r,q)}(h) = Σ_i (-1)^{i+q} / (i! q! (i+r-q)!) g^{i+r-q} c^i h^q`, defined
/// for every `r, q ≤ n`; `h` must be symmetric.
pub fn s_rq_contraction<S: Scalar>(h: &DoubleForm<S>, r: usize, q: usize) -> Result<DoubleForm<S>> {
    s_rq_contraction_with(h, r, q, &Metric::euclidean(h.n()))
}

pub fn s_rq_contraction_with<S: Scalar>(
    h: &DoubleForm<S>,
    r: usize,
    q: usize,
    metric: &Metric<S>,
) -> Result<DoubleForm<S>> {
    require_bilinear(h)?;
    Ok(h_rpq_contraction_with(h, r, q, metric)?.scale(&inv_factorial(q)))
}

/// `s_{(r,q)}` by the star formula where it applies, otherwise by the expansion.
pub fn s_rq<S: Scalar>(h: &DoubleForm<S>, r: usize, q: usize) -> Result<DoubleForm<S>> {
    let n = h.n();
    if q <= n && r <= n - q {
        s_rq_hodge(h, r, q)
    } else {
        s_rq_contraction(h, r, q)
    }
}

/// `det(h - λg) = Σ_i (-1)^{n-i} s_i(h) λ^{n-i}`.
pub fn char_poly_s<S: Scalar>(h: &DoubleForm<S>) -> Result<CharPoly<S>> {
    let n = h.n();
    let coeffs = (0..=n)
        .map(|d| Ok(sign_pow::<S>(d) * s_k(h, n - d)?))
        .collect::<Result<_>>()?;
    Ok(CharPoly { family: "s", coeffs })
}

/// `t_{n-1}(h - λg) = Σ_i (-1)^{n-1-i} t_i(h) λ^{n-1-i}`.
pub fn char_poly_t<S: Scalar>(h: &DoubleForm<S>) -> Result<CharPoly<DoubleForm<S>>> {
    let n = h.n();
    if n == 0 {
        return Err(Error::DegreeTooSmall { what: "n", value: 0, min: 1 });
    }
    let coeffs = (0..n)
        .map(|d| Ok(t_k(h, n - 1 - d)?.scale(&sign_pow(d))))
        .collect::<Result<_>>()?;
    Ok(CharPoly { family: "t", coeffs })
}

/// `*(h - λg)^{n-r} / (n-r)! = Σ_q (-1)^{n-q-r} s_{(r,q)}(h) λ^{n-q-r}`.
pub fn char_poly_srq<S: Scalar>(h: &DoubleForm<S>, r: usize) -> Result<CharPoly<DoubleForm<S>>> {
    let n = h.n();
    bound("r", r, n)?;
    let coeffs = (0..=n - r)
        .map(|d| Ok(s_rq_hodge(h, r, n - r - d)?.scale(&sign_pow(d))))
        .collect::<Result<_>>()?;
    Ok(CharPoly { family: "srq", coeffs })
}

/// Power sums `p_i = c(h^{∘i})` for `i = 1..=r`.
pub fn power_sums<S: Scalar>(h: &DoubleForm<S>, r: usize) -> Result<Vec<S>> {
    require_bilinear(h)?;
    let mut out = Vec::with_capacity(r);
    let mut acc = h.clone();
    for i in 1..=r {
        if i > 1 {
            acc = acc.compose(h)?;
        }
        out.push(scalar_of(acc.contract()));
    }
    Ok(out)
}

/// `s_k(A + B) = Σ_i ⟨s_{(k-i,i)}(A), B^{k-i}⟩ / (k-i)!`.
pub fn s_k_of_sum<S: Scalar>(a: &DoubleForm<S>, b: &DoubleForm<S>, k: usize) -> Result<S> {
    require_bilinear(a)?;
    require_bilinear(b)?;
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    bound("k", k, a.n())?;
    let mut acc = S::zero();
    for i in 0..=k {
        let term = s_rq(a, k - i, i)?.inner(&b.power(k - i)?)?;
        acc = acc + term / factorial::<S>(k - i);
    }
    Ok(acc)
}

/// Gauss-Bonnet curvature `h_{2k}(R) = *(g^{n-2k} R^k) / (n-2k)!`; `h_0 = 1`.
pub fn h2k<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<S> {
    require_curvature(r)?;
    let n = r.n();
    bound("2k", 2 * k, n)?;
    Ok(scalar_of(star_of_metric_product(&r.power(k)?, n - 2 * k, factorial(n - 2 * k))?))
}

/// `h_{2k}(R) = c^{2k} R^k / (2k)!`.
pub fn h2k_contraction<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<S> {
    require_curvature(r)?;
    bound("2k", 2 * k, r.n())?;
    Ok(scalar_of(r.power(k)?.contract_times(2 * k)) / factorial::<S>(2 * k))
}

/// Einstein-Lovelock tensor `T_{2k}(R) = *(g^{n-2k-1} R^k) / (n-2k-1)!`.
pub fn t2k<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<DoubleForm<S>> {
    require_curvature(r)?;
    let n = r.n();
    bound("2k + 1", 2 * k + 1, n)?;
    star_of_metric_product(&r.power(k)?, n - 2 * k - 1, factorial(n - 2 * k - 1))
}

/// `T_{2k}(R) = (c^{2k} R^k / (2k)!) g - c^{2k-1} R^k / (2k-1)!` for
/// `1 ≤ k`, `2k ≤ n`.
pub fn t2k_contraction<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<DoubleForm<S>> {
    require_curvature(r)?;
    let n = r.n();
    if k == 0 {
        return Err(Error::DegreeTooSmall { what: "k", value: 0, min: 1 });
    }
    bound("2k", 2 * k, n)?;
    let rk = r.power(k)?;
    let c1 = rk.contract_times(2 * k - 1);
    let c0 = scalar_of(c1.contract());
    let g = DoubleForm::metric(n).scale(&(c0 / factorial::<S>(2 * k)));
    g.sub(&c1.scale(&inv_factorial(2 * k - 1)))
}

/// `N_{2k}(R) = *(g^{n-2k-2} R^k) / (n-2k-2)!`.
pub fn n2k<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<DoubleForm<S>> {
    require_curvature(r)?;
    let n = r.n();
    bound("2k + 2", 2 * k + 2, n)?;
    star_of_metric_product(&r.power(k)?, n - 2 * k - 2, factorial(n - 2 * k - 2))
}

/// `N_{2k}(R) = c^{2k-2}R^k/(2k-2)! - (c^{2k-1}R^k/(2k-1)!) g + (c^{2k}R^k/(2 (2k)!)) g^2`
/// for `1 ≤ k`, `2k ≤ n`.
pub fn n2k_contraction<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<DoubleForm<S>> {
    require_curvature(r)?;
    let n = r.n();
    if k == 0 {
        return Err(Error::DegreeTooSmall { what: "k", value: 0, min: 1 });
    }
    bound("2k", 2 * k, n)?;
    let c2 = r.power(k)?.contract_times(2 * k - 2);
    let c1 = c2.contract();
    let c0 = scalar_of(c1.contract());
    let g = DoubleForm::metric(n);
    let mut out = c2.scale(&inv_factorial(2 * k - 2));
    out.add_scaled(&-inv_factorial::<S>(2 * k - 1), &g.wedge(&c1)?)?;
    let top = c0 / (S::from_i64(2) * factorial::<S>(2 * k));
    out.add_scaled(&top, &DoubleForm::metric_power(n, 2)?)?;
    Ok(out)
}

/// `h_n(R - λ g^2/2) = Σ_i C(k,i) ((-1)^{k-i} / 2^{k-i}) (2k-2i)! h_{2i}(R) λ^{k-i}`, `n = 2k`.
pub fn char_poly_hn<S: Scalar>(r: &DoubleForm<S>) -> Result<CharPoly<S>> {
    require_curvature(r)?;
    let n = r.n();
    if n % 2 == 1 {
        return Err(Error::Parity { what: "h_n characteristic polynomial", parity: "even", n });
    }
    let k = n / 2;
    let coeffs = (0..=k)
        .map(|d| {
            let i = k - d;
            let c = S::from_i64(binomial(k, i) as i64) * sign_pow::<S>(d)
                / crate::scalar::powi(&S::from_i64(2), d)
                * factorial::<S>(2 * d);
            Ok(c * h2k(r, i)?)
        })
        .collect::<Result<_>>()?;
    Ok(CharPoly { family: "hn", coeffs })
}

/// `h_{(r,pq)}(ω) = *(g^{n-pq-r} ω^q) / (n-pq-r)!` for a `(p,p)` form and `r ≤ n - pq`.
pub fn h_rpq_hodge<S: Scalar>(w: &DoubleForm<S>, r: usize, q: usize) -> Result<DoubleForm<S>> {
    require_square(w)?;
    let n = w.n();
    let pq = w.p() * q;
    bound("pq", pq, n)?;
    bound("r", r, n - pq)?;
    star_of_metric_product(&w.power(q)?, n - pq - r, factorial(n - pq - r))
}

/// `h_{(r,pq)}(ω) = Σ_i (-1)^{i+pq} / (i! (r-pq+i)!) g^{r-pq+i} c^i ω^q` for
/// every `r ≤ n`; `ω` must be symmetric.
pub fn h_rpq_contraction<S: Scalar>(w: &DoubleForm<S>, r: usize, q: usize) -> Result<DoubleForm<S>> {
    h_rpq_contraction_with(w, r, q, &Metric::euclidean(w.n()))
}

/// [`h_rpq_contraction`] with `g` and `c` taken relative to `metric`.
pub fn h_rpq_contraction_with<S: Scalar>(
    w: &DoubleForm<S>,
    r: usize,
    q: usize,
    metric: &Metric<S>,
) -> Result<DoubleForm<S>> {
    let mut out = DoubleForm::zeros(w.n(), r, r)?;
    for t in h_rpq_terms(w, r, q, metric)? {
        out.add_scaled(&S::one(), &t)?;
    }
    Ok(out)
}

/// The individual summands of the contraction expansion of `h_{(r,pq)}`.
pub fn h_rpq_terms<S: Scalar>(
    w: &DoubleForm<S>,
    r: usize,
    q: usize,
    metric: &Metric<S>,
) -> Result<Vec<DoubleForm<S>>> {
    require_square(w)?;
    require_symmetric(w, "the contraction expansion")?;
    let n = w.n();
    if metric.n() != n {
        return Err(Error::DimensionMismatch(n, metric.n()));
    }
    bound("r", r, n)?;
    let pq = w.p() * q;
    if pq > n {
        return Ok(Vec::new());
    }
    let wq = w.power(q)?;
    let lo = pq.saturating_sub(r);
    let mut ci = metric.contract_times(&wq, lo);
    let mut out = Vec::with_capacity(pq - lo + 1);
    for i in lo..=pq {
        if i > lo {
            ci = metric.contract(&ci);
        }
        let e = r + i - pq;
        let coef = sign_pow::<S>(i + pq) / (factorial::<S>(i) * factorial::<S>(e));
        out.push(metric.power(e)?.wedge(&ci)?.scale(&coef));
    }
    Ok(out)
}

/// `h_{(r,pq)}` by the star formula where it applies, otherwise by the expansion.
pub fn h_rpq<S: Scalar>(w: &DoubleForm<S>, r: usize, q: usize) -> Result<DoubleForm<S>> {
    require_square(w)?;
    let n = w.n();
    let pq = w.p() * q;
    if pq <= n && r <= n - pq {
        h_rpq_hodge(w, r, q)
    } else {
        h_rpq_contraction(w, r, q)
    }
}

/// A metric path `G(t) = G0 + t W` replaced by the first-order inverse
/// `G0^{-1} - t G0^{-1} W G0^{-1}`, which has the same derivative at `t = 0`
/// and keeps every invariant polynomial in `t`.
fn linearized_metric<S: Scalar>(g0: &DoubleForm<S>, w: &DoubleForm<S>, t: &S) -> Result<Metric<S>> {
    require_bilinear(w)?;
    let n = g0.n();
    let a = metric_inverse(g0)?;
    let awa = crate::linalg::matmul(&crate::linalg::matmul(&a, w.entries(), n, n, n), &a, n, n, n);
    let inv = a
        .into_iter()
        .zip(awa)
        .map(|(x, y)| x - t.clone() * y)
        .collect();
    Ok(Metric::with_inverse(g0.clone(), inv))
}

fn moved<S: Scalar>(x: &DoubleForm<S>, v: &DoubleForm<S>, t: &S) -> Result<DoubleForm<S>> {
    x.add(&v.scale(t))
}

/// `d/dt s_k(h0 + t v)` at `t = 0` by interpolation, against `⟨t_{k-1}(h0), v⟩`.
pub fn jacobi_derivative<S: Scalar>(h0: &DoubleForm<S>, v: &DoubleForm<S>, k: usize) -> Result<(S, S)> {
    require_bilinear(h0)?;
    require_bilinear(v)?;
    if k == 0 {
        return Err(Error::DegreeTooSmall { what: "k", value: 0, min: 1 });
    }
    bound("k", k, h0.n())?;
    let lhs = derivative_at_zero(k, |t| s_k(&moved(h0, v, &t)?, k))?;
    let rhs = t_k(h0, k - 1)?.inner(v)?;
    Ok((lhs, rhs))
}

/// Jacobi's formula along `h = h0 + t v`, `g = G0 + t W`:
/// `d/dt s_k = ⟨t_{k-1}(h), v⟩ + ⟨t_k(h) - s_k(h) g, W⟩` at `t = 0`, with every
/// invariant and inner product taken relative to the varying metric.
pub fn jacobi_with_metric<S: Scalar>(
    h0: &DoubleForm<S>,
    v: &DoubleForm<S>,
    g0: &DoubleForm<S>,
    w: &DoubleForm<S>,
    k: usize,
) -> Result<(S, S)> {
    require_bilinear(v)?;
    require_symmetric(w, "a metric variation")?;
    if k == 0 {
        return Err(Error::DegreeTooSmall { what: "k", value: 0, min: 1 });
    }
    bound("k", k, h0.n())?;
    let base = Metric::new(g0)?;
    let f = factorial::<S>(k);
    let lhs = derivative_at_zero(2 * k, |t| {
        let m = linearized_metric(g0, w, &t)?;
        let h = moved(h0, v, &t)?;
        Ok(scalar_of(m.contract_times(&h.power(k)?, k)) / (f.clone() * f.clone()))
    })?;
    let t_prev = s_rq_contraction_with(h0, 1, k - 1, &base)?;
    let t_k = s_rq_contraction_with(h0, 1, k, &base)?;
    let s = scalar_of(s_rq_contraction_with(h0, 0, k, &base)?);
    let rhs = base.inner(&t_prev, v)? + base.inner(&t_k.sub(&g0.scale(&s))?, w)?;
    Ok((lhs, rhs))
}

/// `d/dt h_{2k}(R0 + t V)` at `t = 0` against `⟨k N_{2k-2}(R0), V⟩`.
pub fn jacobi_double_form<S: Scalar>(r0: &DoubleForm<S>, v: &DoubleForm<S>, k: usize) -> Result<(S, S)> {
    require_curvature(r0)?;
    require_curvature(v)?;
    if k == 0 {
        return Err(Error::DegreeTooSmall { what: "k", value: 0, min: 1 });
    }
    bound("2k", 2 * k, r0.n())?;
    let lhs = derivative_at_zero(k, |t| h2k(&moved(r0, v, &t)?, k))?;
    let nk = h_rpq(r0, 2, k - 1)?;
    let rhs = nk.inner(v)? * S::from_i64(k as i64);
    Ok((lhs, rhs))
}

/// `d/dt h_{2k} = ⟨k N_{2k-2}(R), V⟩ + ⟨T_{2k}(R) - h_{2k}(R) g, W⟩` at `t = 0`
/// along `R = R0 + t V`, `g = G0 + t W`.
pub fn jacobi_double_form_with_metric<S: Scalar>(
    r0: &DoubleForm<S>,
    v: &DoubleForm<S>,
    g0: &DoubleForm<S>,
    w: &DoubleForm<S>,
    k: usize,
) -> Result<(S, S)> {
    require_curvature(r0)?;
    require_curvature(v)?;
    require_symmetric(w, "a metric variation")?;
    if k == 0 {
        return Err(Error::DegreeTooSmall { what: "k", value: 0, min: 1 });
    }
    bound("2k", 2 * k, r0.n())?;
    let base = Metric::new(g0)?;
    let lhs = derivative_at_zero(3 * k, |t| {
        let m = linearized_metric(g0, w, &t)?;
        let r = moved(r0, v, &t)?;
        Ok(scalar_of(m.contract_times(&r.power(k)?, 2 * k)) / factorial::<S>(2 * k))
    })?;
    let nk = h_rpq_contraction_with(r0, 2, k - 1, &base)?;
    let tk = h_rpq_contraction_with(r0, 1, k, &base)?;
    let hk = scalar_of(h_rpq_contraction_with(r0, 0, k, &base)?);
    let rhs = base.inner(&nk, v)? * S::from_i64(k as i64) + base.inner(&tk.sub(&g0.scale(&hk))?, w)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Symmetry};
    use crate::multiindex::subsets;
    use crate::oracle;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn diag(vals: &[i64]) -> DoubleForm<Rational> {
        let n = vals.len();
        DoubleForm::from_fn(n, 1, 1, |i, j| if i == j { r(vals[i.indices()[0]]) } else { r(0) }).unwrap()
    }

    #[test]
    fn s_k_of_metric_and_random() {
        for n in 1..=5 {
            let g = DoubleForm::<Rational>::metric(n);
            for k in 0..=n {
                assert_eq!(s_k(&g, k).unwrap(), r(binomial(n, k) as i64));
            }
        }
        let h = fixtures::random_bilinear::<Rational>(4, 11, Symmetry::General);
        for k in 0..=4 {
            let want = oracle::minor_sum_oracle(h.entries(), 4, k);
            assert_eq!(s_k(&h, k).unwrap(), want);
            assert_eq!(s_k_contraction(&h, k).unwrap(), want);
        }
        assert_eq!(s_k(&h, 4).unwrap(), oracle::det_oracle(h.entries(), 4));
        assert!(s_k(&h, 5).is_err());
    }

    #[test]
    fn sectional_values() {
        let n = 5;
        let h = fixtures::random_bilinear::<Rational>(n, 3, Symmetry::General);
        let sub = MultiIndex::new(n, &[0, 2]).unwrap();
        let restricted = [
            h.at(0, 0).clone(),
            h.at(0, 2).clone(),
            h.at(2, 0).clone(),
            h.at(2, 2).clone(),
        ];
        assert_eq!(sectional_value(&h, 1, 1, &sub).unwrap(), restricted[0].clone() + restricted[3].clone());
        for k in 0..=2 {
            for rr in 0..=2 {
                for i in subsets(n, k + rr) {
                    let ix = i.indices();
                    let m: Vec<Rational> = ix
                        .iter()
                        .flat_map(|&a| ix.iter().map(move |&b| (a, b)))
                        .map(|(a, b)| h.at(a, b).clone())
                        .collect();
                    let want = factorial::<Rational>(k)
                        * factorial::<Rational>(rr)
                        * oracle::minor_sum_oracle(&m, k + rr, rr);
                    assert_eq!(sectional_value(&h, k, rr, &i).unwrap(), want);
                }
            }
        }
        let g = DoubleForm::<Rational>::metric(4);
        let full = MultiIndex::full(4);
        assert_eq!(sectional_value(&g, 2, 2, &full).unwrap(), r(2 * 2 * 6));
        assert!(sectional_value(&g, 1, 1, &full).is_err());
    }

    #[test]
    fn t_k_cases() {
        for n in 2..=5 {
            let g = DoubleForm::<Rational>::metric(n);
            let h = fixtures::random_bilinear::<Rational>(n, 7 + n as u64, Symmetry::General);
            assert_eq!(t_k(&h, 0).unwrap(), g);
            for k in 0..n {
                assert_eq!(t_k(&g, k).unwrap(), g.scale(&r(binomial(n - 1, k) as i64)));
            }
            let cof = oracle::cofactor_matrix_oracle(h.entries(), n);
            assert_eq!(t_k(&h, n - 1).unwrap().entries(), &cof[..]);
        }
    }

    #[test]
    fn s_rq_paths_agree_and_reduce() {
        for n in 2..=5 {
            let h = fixtures::random_bilinear::<Rational>(n, 40 + n as u64, Symmetry::Symmetric);
            for q in 0..=n {
                for rr in 0..=n - q {
                    let a = s_rq_hodge(&h, rr, q).unwrap();
                    assert_eq!(a, s_rq_contraction(&h, rr, q).unwrap(), "n={n} r={rr} q={q}");
                    if rr == 0 {
                        assert_eq!(*a.as_scalar().unwrap(), s_k(&h, q).unwrap());
                    }
                    if rr == 1 && q < n {
                        assert_eq!(a, t_k(&h, q).unwrap());
                    }
                }
                let g = DoubleForm::<Rational>::metric(n);
                if q == 0 {
                    for rr in 0..=n {
                        let gr = DoubleForm::metric_power(n, rr).unwrap().scale(&inv_factorial(rr));
                        assert_eq!(s_rq(&g, rr, 0).unwrap(), gr);
                    }
                }
            }
        }
    }

    #[test]
    fn s_rq_eigenvalues_of_diagonal() {
        let lam = [2, -1, 3, 5];
        let h = diag(&lam);
        let s = s_rq(&h, 2, 2).unwrap();
        for i in subsets(4, 2) {
            for j in subsets(4, 2) {
                let want = if i == j {
                    subsets(4, 2)
                        .filter(|t| t.bits() & i.bits() == 0)
                        .map(|t| t.indices().iter().map(|&a| lam[a]).product::<i64>())
                        .sum::<i64>()
                } else {
                    0
                };
                assert_eq!(*s.get(&i, &j), r(want));
            }
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let n = 4;
        let g = DoubleForm::<Rational>::metric(n);
        let cg = char_poly_s(&g).unwrap();
        assert_eq!(cg.coeffs, vec![r(1), r(-4), r(6), r(-4), r(1)]);

        let h = fixtures::random_bilinear::<Rational>(n, 5, Symmetry::General);
        let samples: Vec<Rational> = (0..=n as i64)
            .map(|lam| {
                let m = h.sub(&g.scale(&r(lam))).unwrap();
                oracle::det_oracle(m.entries(), n)
            })
            .collect();
        let direct = crate::poly::Polynomial::interpolate_at_integers(&samples);
        assert_eq!(char_poly_s(&h).unwrap().coeffs, direct.coeffs);

        let ct = char_poly_t(&h).unwrap();
        assert_eq!(ct.degree(), n - 1);
        assert_eq!(ct.coeffs[0], t_k(&h, n - 1).unwrap());
        let tsamples: Vec<DoubleForm<Rational>> = (0..n as i64)
            .map(|lam| t_k(&h.sub(&g.scale(&r(lam))).unwrap(), n - 1).unwrap())
            .collect();
        assert_eq!(crate::poly::interpolate_forms(&tsamples).unwrap(), ct.coeffs);

        for rr in 1..n {
            let cp = char_poly_srq(&h, rr).unwrap();
            let ss: Vec<DoubleForm<Rational>> = (0..=(n - rr) as i64)
                .map(|lam| {
                    let x = h.sub(&g.scale(&r(lam))).unwrap().power(n - rr).unwrap();
                    x.hodge().scale(&inv_factorial(n - rr))
                })
                .collect();
            assert_eq!(crate::poly::interpolate_forms(&ss).unwrap(), cp.coeffs);
        }
    }

    #[test]
    fn power_sums_and_sum_formula() {
        let n = 4;
        let g = DoubleForm::<Rational>::metric(n);
        assert_eq!(power_sums(&g, 3).unwrap(), vec![r(4); 3]);
        let h = fixtures::random_bilinear::<Rational>(n, 9, Symmetry::General);
        assert_eq!(power_sums(&h, 1).unwrap()[0], s_k(&h, 1).unwrap());

        let a = fixtures::random_bilinear::<Rational>(n, 21, Symmetry::Symmetric);
        let b = fixtures::random_bilinear::<Rational>(n, 22, Symmetry::General);
        let zero = DoubleForm::zeros(n, 1, 1).unwrap();
        for k in 0..=n {
            assert_eq!(s_k_of_sum(&a, &zero, k).unwrap(), s_k(&a, k).unwrap());
            assert_eq!(s_k_of_sum(&g, &g, k).unwrap(), r((binomial(n, k) << k) as i64));
            assert_eq!(s_k_of_sum(&a, &b, k).unwrap(), s_k(&a.add(&b).unwrap(), k).unwrap());
        }
    }

    #[test]
    fn curvature_families() {
        for n in 2..=6 {
            let rc = fixtures::constant_curvature::<Rational>(n, r(1));
            assert_eq!(h2k(&rc, 0).unwrap(), r(1));
            for k in 0..=n / 2 {
                let want = factorial::<Rational>(n) / (r(1 << k) * factorial::<Rational>(n - 2 * k));
                assert_eq!(h2k(&rc, k).unwrap(), want);
                assert_eq!(h2k_contraction(&rc, k).unwrap(), want);
            }
            if n >= 3 {
                let t2 = t2k(&rc, 1).unwrap();
                let want = DoubleForm::metric(n).scale(&r(((n - 1) * (n - 2) / 2) as i64));
                assert_eq!(t2, want);
            }
            let rb = fixtures::random_bianchi::<Rational>(n, 2, 2, 100 + n as u64);
            for k in 1..=n / 2 {
                assert_eq!(h2k(&rb, k).unwrap(), h2k_contraction(&rb, k).unwrap());
                if 2 * k < n {
                    assert_eq!(t2k(&rb, k).unwrap(), t2k_contraction(&rb, k).unwrap());
                }
                if 2 * k + 2 <= n {
                    assert_eq!(n2k(&rb, k).unwrap(), n2k_contraction(&rb, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn hn_characteristic_polynomial() {
        for n in [2usize, 4, 6] {
            let k = n / 2;
            let g2 = DoubleForm::<Rational>::metric_power(n, 2).unwrap().scale(&Rational::from_ratio(1, 2));
            let zero = DoubleForm::<Rational>::zeros(n, 2, 2).unwrap();
            let c0 = char_poly_hn(&zero).unwrap();
            assert_eq!(c0.degree(), k);
            let lead = sign_pow::<Rational>(k) / crate::scalar::powi(&r(2), k) * factorial::<Rational>(n);
            assert_eq!(c0.coeffs[k], lead);
            for rr in [g2.clone(), fixtures::random_bianchi::<Rational>(n, 2, 2, 77)] {
                let cp = char_poly_hn(&rr).unwrap();
                let samples: Vec<Rational> = (0..=k as i64)
                    .map(|lam| h2k(&rr.sub(&g2.scale(&r(lam))).unwrap(), k).unwrap())
                    .collect();
                let direct = crate::poly::Polynomial::interpolate_at_integers(&samples);
                let mut want = cp.coeffs.clone();
                while want.len() > 1 && want.last().unwrap() == &r(0) {
                    want.pop();
                }
                assert_eq!(direct.coeffs, want);
            }
        }
        assert!(char_poly_hn(&DoubleForm::<Rational>::zeros(5, 2, 2).unwrap()).is_err());
    }

    #[test]
    fn h_rpq_paths_and_reductions() {
        let n = 6;
        let w = fixtures::random_bianchi::<Rational>(n, 3, 1, 5);
        assert_eq!(h_rpq_hodge(&w, 0, 1).unwrap(), h_rpq_contraction(&w, 0, 1).unwrap());
        let h = fixtures::random_bilinear::<Rational>(5, 8, Symmetry::Symmetric);
        for q in 0..=5 {
            let hq = h_rpq(&h, 0, q).unwrap();
            assert_eq!(*hq.as_scalar().unwrap(), factorial::<Rational>(q) * s_k(&h, q).unwrap());
        }
        let rb = fixtures::random_bianchi::<Rational>(5, 2, 2, 6);
        for q in 1..=2 {
            assert_eq!(h_rpq(&rb, 1, q).unwrap(), t2k_contraction(&rb, q).unwrap());
        }
    }

    #[test]
    fn jacobi_examples() {
        let n = 4;
        let g = DoubleForm::<Rational>::metric(n);
        let zero = DoubleForm::zeros(n, 1, 1).unwrap();
        assert_eq!(jacobi_derivative(&g, &zero, 2).unwrap(), (r(0), r(0)));
        assert_eq!(jacobi_derivative(&g, &g, 1).unwrap(), (r(4), r(4)));
        let h0 = fixtures::random_bilinear::<Rational>(n, 31, Symmetry::General);
        let v = fixtures::random_bilinear::<Rational>(n, 32, Symmetry::General);
        let (a, b) = jacobi_derivative(&h0, &v, 3).unwrap();
        assert_eq!(a, b);

        // w = 0 reduces to the fixed metric formula
        let hs = fixtures::random_bilinear::<Rational>(n, 33, Symmetry::Symmetric);
        let vs = fixtures::random_bilinear::<Rational>(n, 34, Symmetry::Symmetric);
        for k in 1..=n {
            let (a, b) = jacobi_with_metric(&hs, &vs, &g, &zero, k).unwrap();
            assert_eq!(a, b);
            assert_eq!((a.clone(), b), jacobi_derivative(&hs, &vs, k).unwrap());
        }

        let rc = fixtures::constant_curvature::<Rational>(n, r(1));
        for k in 1..=2 {
            let (a, b) = jacobi_double_form(&rc, &rc, k).unwrap();
            // h_{2k}((1+t) R) = (1+t)^k h_{2k}(R)
            let want = r(k as i64) * h2k(&rc, k).unwrap();
            assert_eq!(a, want);
            assert_eq!(b, want);
        }
    }

    #[test]
    fn higher_determinants_differ_from_minor_invariants() {
        // off-diagonal "higher determinants" are not s_k of the minor in general
        let mut found = None;
        'search: for seed in 0..50u64 {
            for n in 3..=4 {
                let h = fixtures::random_bilinear::<Rational>(n, seed, Symmetry::Symmetric);
                for k in 1..n - 1 {
                    let t = t_k(&h, k).unwrap();
                    for i in 0..n {
                        for j in 0..n {
                            if i == j {
                                continue;
                            }
                            let rows: Vec<usize> = (0..n).filter(|&x| x != i).collect();
                            let cols: Vec<usize> = (0..n).filter(|&x| x != j).collect();
                            let m: Vec<Rational> = rows
                                .iter()
                                .flat_map(|&a| cols.iter().map(move |&b| (a, b)))
                                .map(|(a, b)| h.at(a, b).clone())
                                .collect();
                            let minor_sk = oracle::minor_sum_oracle(&m, n - 1, k);
                            let higher = if (i + j) % 2 == 0 { t.at(i, j).clone() } else { -t.at(i, j).clone() };
                            if higher != minor_sk {
                                found = Some((seed, n, k, i, j));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        assert!(found.is_some());
    }
}
