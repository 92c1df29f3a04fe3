//! Checkable predicates for the algebraic identities of double forms.
//!
//! Every check evaluates both sides of an identity by independent routes and
//! returns an [`IdentityResidual`]. In exact mode a theorem holds iff the
//! residual is literally zero; in float mode the residual is compared with
//! [`FLOAT_RELATIVE_TOLERANCE`] relative to the size of the terms involved.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dform::DoubleForm;
use crate::error::{Error, Result};
use crate::fixtures::{self, Symmetry};
use crate::invariants::{self as inv, Metric};
use crate::linalg;
use crate::pfaffian;
use crate::poly::{derivative_at_zero, Polynomial};
use crate::scalar::{factorial, sign_pow, Scalar, FLOAT_RELATIVE_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Asserted: a nonzero residual is a failure.
    Theorem,
    /// Reported only.
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub fixture: String,
    pub scalar: String,
    /// Scalar difference, or the largest absolute entry of a form difference.
    pub residual: String,
    pub residual_f64: f64,
    pub relative_residual: f64,
    pub exact_zero: bool,
    pub kind: CheckKind,
    pub passed: bool,
    pub reference: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityResidual {
    pub fn on(mut self, fixture: impl Into<String>) -> Self {
        self.fixture = fixture.into();
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// A theorem check whose residual is nonzero.
    pub fn is_failure(&self) -> bool {
        self.kind == CheckKind::Theorem && !self.passed
    }

    fn sort_key(&self) -> (&str, &BTreeMap<String, i64>, &str) {
        (&self.name, &self.params, &self.fixture)
    }
}

pub(crate) struct Meta {
    name: &'static str,
    reference: &'static str,
    kind: CheckKind,
    params: BTreeMap<String, i64>,
}

pub(crate) fn meta(name: &'static str, reference: &'static str, params: &[(&str, usize)]) -> Meta {
    Meta {
        name,
        reference,
        kind: CheckKind::Theorem,
        params: params.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect(),
    }
}

impl Meta {
    pub(crate) fn conjecture(mut self) -> Self {
        self.kind = CheckKind::Conjecture;
        self
    }

    /// The relative residual divides by `max(scale, 1)`, so identities whose
    /// sides vanish are judged by their absolute rounding error.
    pub(crate) fn finish<S: Scalar>(self, residual: S, scale: S) -> IdentityResidual {
        let abs = residual.abs();
        let abs_f = abs.to_f64();
        let relative = abs_f / scale.abs().to_f64().max(1.0);
        let exact_zero = abs.is_zero();
        let passed = if S::EXACT {
            exact_zero
        } else {
            relative <= FLOAT_RELATIVE_TOLERANCE
        };
        IdentityResidual {
            name: self.name.to_string(),
            params: self.params,
            fixture: String::new(),
            scalar: S::NAME.to_string(),
            residual: abs.render(),
            residual_f64: abs_f,
            relative_residual: relative,
            exact_zero,
            kind: self.kind,
            passed,
            reference: self.reference.to_string(),
            detail: None,
        }
    }

    pub(crate) fn scalars<S: Scalar>(self, lhs: S, rhs: S) -> IdentityResidual {
        let scale = larger(lhs.abs(), rhs.abs());
        self.finish(lhs - rhs, scale)
    }

    /// `Σ terms = 0`.
    pub(crate) fn scalar_terms<S: Scalar>(self, terms: &[S]) -> IdentityResidual {
        let sum = terms.iter().fold(S::zero(), |a, b| a + b.clone());
        let scale = terms.iter().fold(S::zero(), |a, b| larger(a, b.abs()));
        self.finish(sum, scale)
    }

    pub(crate) fn forms<S: Scalar>(self, lhs: &DoubleForm<S>, rhs: &DoubleForm<S>) -> Result<IdentityResidual> {
        let diff = lhs.sub(rhs)?;
        let scale = larger(lhs.max_abs(), rhs.max_abs());
        Ok(self.finish(diff.max_abs(), scale))
    }

    /// `Σ terms = 0` for forms of one bidegree; an empty list is a trivial zero.
    pub(crate) fn form_terms<S: Scalar>(self, shape: (usize, usize, usize), terms: &[DoubleForm<S>]) -> Result<IdentityResidual> {
        let (n, p, q) = shape;
        let mut sum = DoubleForm::zeros(n, p, q)?;
        let mut scale = S::zero();
        for t in terms {
            sum.add_scaled(&S::one(), t)?;
            scale = larger(scale, t.max_abs());
        }
        Ok(self.finish(sum.max_abs(), scale))
    }
}

fn larger<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}

fn scalar_of<S: Scalar>(w: &DoubleForm<S>) -> S {
    w.as_scalar().cloned().expect("(0,0) form")
}

fn inv_fact<S: Scalar>(k: usize) -> S {
    S::one() / factorial::<S>(k)
}

fn range_check(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo {
        return Err(Error::DegreeTooSmall { what, value, min: lo });
    }
    if value > hi {
        return Err(Error::DegreeOutOfRange { what, value, max: hi });
    }
    Ok(())
}

fn curvature_k<S: Scalar>(r: &DoubleForm<S>) -> Result<usize> {
    if r.bidegree() != (2, 2) {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (2,2)".into(),
            got: format!("bidegree {:?}", r.bidegree()),
        });
    }
    Ok(r.n() / 2)
}

fn require_symmetric<S: Scalar>(w: &DoubleForm<S>, what: &'static str) -> Result<()> {
    if w.is_symmetric() {
        Ok(())
    } else {
        Err(Error::NotSymmetric(what))
    }
}

// ---- double form calculus ----

/// `⟨g ω1, ω2⟩ = ⟨ω1, c ω2⟩`.
pub fn check_adjointness<S: Scalar>(w1: &DoubleForm<S>, w2: &DoubleForm<S>) -> Result<IdentityResidual> {
    let m = meta(
        "adjointness",
        "contraction is adjoint to multiplication by g",
        &[("n", w1.n()), ("p", w1.p()), ("q", w1.q())],
    );
    let g = DoubleForm::metric(w1.n());
    let lhs = g.wedge(w1)?.inner(w2)?;
    let rhs = w1.inner(&w2.contract())?;
    Ok(m.scalars(lhs, rhs))
}

/// `g ω = ± *c*ω`, sign as in [`contraction_sign`].
pub fn check_star_g<S: Scalar>(w: &DoubleForm<S>) -> Result<IdentityResidual> {
    let m = meta("star_contraction_g", "g ω = ± *c*ω", &[("n", w.n()), ("p", w.p()), ("q", w.q())]);
    let lhs = DoubleForm::metric(w.n()).wedge(w)?;
    let rhs = w.hodge().contract().hodge().scale(&contraction_sign(w));
    m.forms(&lhs, &rhs)
}

/// `c ω = ± *g*ω`, sign as in [`contraction_sign`].
pub fn check_star_c<S: Scalar>(w: &DoubleForm<S>) -> Result<IdentityResidual> {
    let m = meta("star_contraction_c", "c ω = ± *g*ω", &[("n", w.n()), ("p", w.p()), ("q", w.q())]);
    let lhs = w.contract();
    let rhs = DoubleForm::metric(w.n()).wedge(&w.hodge())?.hodge().scale(&contraction_sign(w));
    m.forms(&lhs, &rhs)
}

/// `(-1)^{(n+1)(p+q)}`, which is `1` unless both `n` and `p+q` are odd.
fn contraction_sign<S: Scalar>(w: &DoubleForm<S>) -> S {
    if w.n() % 2 == 1 && (w.p() + w.q()) % 2 == 1 { -S::one() } else { S::one() }
}

/// `⟨ω,θ⟩ = *(ω *θ) = (-1)^{(p+q)(n-p-q)} *((*ω) θ)`.
pub fn check_inner_via_star<S: Scalar>(w: &DoubleForm<S>, t: &DoubleForm<S>) -> Result<IdentityResidual> {
    let (n, p, q) = (w.n(), w.p(), w.q());
    let m = meta("inner_via_star", "inner product through the double star", &[("n", n), ("p", p), ("q", q)]);
    let direct = w.inner(t)?;
    let first = scalar_of(&w.wedge(&t.hodge())?.hodge());
    let second = scalar_of(&w.hodge().wedge(t)?.hodge()) * crate::dform::star_sign::<S>(n, p, q);
    let worst = larger((direct.clone() - first).abs(), (direct.clone() - second).abs());
    Ok(m.finish(worst, direct.abs()))
}

/// `*(g^{k-p} ω)/(k-p)! = Σ_r ((-1)^{r+p}/r!) g^{n-k-p+r}/(n-k-p+r)! c^r ω`
/// for a Bianchi `(p,p)` form and `1 ≤ p ≤ k ≤ n`.
pub fn check_star_expansion<S: Scalar>(w: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    let (n, p) = (w.n(), w.p());
    if w.q() != p {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (p,p)".into(),
            got: format!("bidegree {:?}", w.bidegree()),
        });
    }
    range_check("p", p, 1, k)?;
    range_check("k", k, p, n)?;
    let m = meta("star_expansion", "star of g^{k-p} ω expanded in contractions", &[("n", n), ("p", p), ("k", k)]);
    let lhs = DoubleForm::metric_power(n, k - p)?
        .wedge(w)?
        .hodge()
        .scale(&inv_fact(k - p));
    let mut terms = vec![lhs.neg()];
    let mut cr = w.contract_times((p + k).saturating_sub(n));
    for r in (p + k).saturating_sub(n)..=p {
        if r > (p + k).saturating_sub(n) {
            cr = cr.contract();
        }
        let e = n + r - k - p;
        let coef = sign_pow::<S>(r + p) * inv_fact(r) * inv_fact(e);
        terms.push(DoubleForm::metric_power(n, e)?.wedge(&cr)?.scale(&coef));
    }
    m.form_terms((n, n - k, n - k), &terms)
}

/// `⟨ω1, ω2⟩ = c^p(ω2^t ∘ ω1)/p! = c^p(ω1^t ∘ ω2)/p!`.
pub fn check_composition_contraction<S: Scalar>(w1: &DoubleForm<S>, w2: &DoubleForm<S>) -> Result<IdentityResidual> {
    let p = w1.p();
    let m = meta(
        "composition_contraction",
        "inner product as full contraction of a composition",
        &[("n", w1.n()), ("p", p), ("q", w1.q())],
    );
    let direct = w1.inner(w2)?;
    let a = scalar_of(&w2.transpose().compose(w1)?.contract_times(p)) * inv_fact(p);
    let b = scalar_of(&w1.transpose().compose(w2)?.contract_times(p)) * inv_fact(p);
    let worst = larger((direct.clone() - a).abs(), (direct.clone() - b).abs());
    Ok(m.finish(worst, direct.abs()))
}

// ---- bilinear forms ----

fn require_bilinear<S: Scalar>(h: &DoubleForm<S>) -> Result<usize> {
    if h.bidegree() != (1, 1) {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (1,1)".into(),
            got: format!("bidegree {:?}", h.bidegree()),
        });
    }
    Ok(h.n())
}

/// `t_n(h) = Σ_r (-1)^r s_{n-r}(h) (h^t)^{∘r} = 0`.
pub fn check_cayley_hamilton<S: Scalar>(h: &DoubleForm<S>) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    let m = meta("cayley_hamilton", "Cayley-Hamilton theorem t_n(h) = 0", &[("n", n)]);
    let ht = h.transpose();
    let mut power = DoubleForm::metric(n);
    let mut terms = Vec::with_capacity(n + 1);
    for r in 0..=n {
        if r > 0 {
            power = power.compose(&ht)?;
        }
        let s = inv::s_k(h, n - r)? * sign_pow::<S>(r);
        terms.push(power.scale(&s));
    }
    m.form_terms((n, 1, 1), &terms)
}

/// `s_{(r,n-i)}(h) = 0` for `i+1 ≤ r ≤ n-i`, symmetric `h`.
pub fn check_general_cayley_hamilton<S: Scalar>(h: &DoubleForm<S>, r: usize, i: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    require_symmetric(h, "the general Cayley-Hamilton theorem")?;
    range_check("i", i, 0, n)?;
    range_check("r", r, i + 1, n - i)?;
    let m = meta(
        "general_cayley_hamilton",
        "general Cayley-Hamilton theorem s_(r,n-i)(h) = 0",
        &[("n", n), ("r", r), ("i", i)],
    );
    let scale = inv_fact::<S>(n - i);
    let terms: Vec<_> = inv::h_rpq_terms(h, r, n - i, &Metric::euclidean(n))?
        .into_iter()
        .map(|t| t.scale(&scale))
        .collect();
    m.form_terms((n, r, r), &terms)
}

/// `(k+1) s_{k+1}(h) = ⟨t_k(h), h⟩`.
pub fn check_laplace<S: Scalar>(h: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("k", k, 0, n.saturating_sub(1))?;
    let m = meta("laplace", "Laplace expansion (k+1) s_{k+1} = <t_k, h>", &[("n", n), ("k", k)]);
    let lhs = S::from_i64(k as i64 + 1) * inv::s_k_contraction(h, k + 1)?;
    let rhs = inv::t_k(h, k)?.inner(h)?;
    Ok(m.scalars(lhs, rhs))
}

/// `h^t ∘ t_{n-1}(h) = s_n(h) g`.
pub fn check_laplace_refined<S: Scalar>(h: &DoubleForm<S>) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    let m = meta("laplace_refined", "h^t o t_{n-1}(h) = det(h) g", &[("n", n)]);
    let lhs = h.transpose().compose(&inv::t_k(h, n - 1)?)?;
    let rhs = DoubleForm::metric(n).scale(&linalg::det(h.entries(), n));
    m.forms(&lhs, &rhs)
}

/// `(det h) g^r/r! = (*(h^{n-r}/(n-r)!))^t ∘ h^r/r!`.
pub fn check_block_laplace<S: Scalar>(h: &DoubleForm<S>, r: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("r", r, 0, n)?;
    let m = meta("block_laplace", "block Laplace expansion", &[("n", n), ("r", r)]);
    let lhs = DoubleForm::identity(n, r)?.scale(&linalg::det(h.entries(), n));
    let cof = h.power(n - r)?.hodge().scale(&inv_fact(n - r)).transpose();
    let rhs = cof.compose(&h.power(r)?.scale(&inv_fact(r)))?;
    m.forms(&lhs, &rhs)
}

/// `k!(n-k)! s_k(h) = ⟨g^p h^q, *(g^{n-k-p} h^{k-q})⟩`.
pub fn check_lower_block<S: Scalar>(h: &DoubleForm<S>, k: usize, p: usize, q: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("k", k, 0, n)?;
    range_check("p", p, 0, n - k)?;
    range_check("q", q, 0, k)?;
    let m = meta(
        "lower_block_laplace",
        "Laplace expansion of the lower s_k",
        &[("n", n), ("k", k), ("p", p), ("q", q)],
    );
    let lhs = factorial::<S>(k) * factorial::<S>(n - k) * linalg_minor_sum(h, k);
    let a = DoubleForm::metric_power(n, p)?.wedge(&h.power(q)?)?;
    let b = DoubleForm::metric_power(n, n - k - p)?.wedge(&h.power(k - q)?)?.hodge();
    Ok(m.scalars(lhs, a.inner(&b)?))
}

/// Sum of principal `k×k` minors by Gaussian elimination.
fn linalg_minor_sum<S: Scalar>(h: &DoubleForm<S>, k: usize) -> S {
    let n = h.n();
    crate::multiindex::subsets(n, k)
        .map(|i| {
            let ix = i.indices();
            let sub: Vec<S> = ix
                .iter()
                .flat_map(|&a| ix.iter().map(move |&b| (a, b)))
                .map(|(a, b)| h.at(a, b).clone())
                .collect();
            linalg::det(&sub, k)
        })
        .fold(S::zero(), |a, b| a + b)
}

/// `c t_k(h) = (n-k) s_k(h)`.
pub fn check_girard_newton<S: Scalar>(h: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("k", k, 0, n.saturating_sub(1))?;
    let m = meta("girard_newton", "trace of t_k is (n-k) s_k", &[("n", n), ("k", k)]);
    let lhs = scalar_of(&inv::t_k(h, k)?.contract());
    let rhs = S::from_i64((n - k) as i64) * linalg_minor_sum(h, k);
    Ok(m.scalars(lhs, rhs))
}

/// `r s_r = Σ_{i=1}^r (-1)^{i+1} s_{r-i} p_i` with power sums `p_i`.
pub fn check_newton_recurrence<S: Scalar>(h: &DoubleForm<S>, r: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("r", r, 1, n)?;
    let m = meta("newton_power_sums", "Girard-Newton identities with power sums", &[("n", n), ("r", r)]);
    let p = inv::power_sums(h, r)?;
    let lhs = S::from_i64(r as i64) * inv::s_k(h, r)?;
    let mut rhs = S::zero();
    for i in 1..=r {
        rhs = rhs + sign_pow::<S>(i + 1) * inv::s_k(h, r - i)? * p[i - 1].clone();
    }
    Ok(m.scalars(lhs, rhs))
}

/// `c s_{(r,q)}(h) = (n-q-r+1) s_{(r-1,q)}(h)` for `1 ≤ r ≤ n-q`.
pub fn check_general_newton_srq<S: Scalar>(h: &DoubleForm<S>, r: usize, q: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("q", q, 0, n)?;
    range_check("r", r, 1, n - q)?;
    let m = meta(
        "general_newton_srq",
        "general Newton identity for s_(r,q)",
        &[("n", n), ("r", r), ("q", q)],
    );
    let lhs = inv::s_rq_hodge(h, r, q)?.contract();
    let rhs = inv::s_rq_hodge(h, r - 1, q)?.scale(&S::from_i64((n - q - r + 1) as i64));
    m.forms(&lhs, &rhs)
}

/// `det(h - λg)` sampled through Gaussian elimination against the `s_k` coefficients.
pub fn check_char_poly_s<S: Scalar>(h: &DoubleForm<S>) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    let m = meta("char_poly_s", "characteristic polynomial coefficients are the s_k", &[("n", n)]);
    let g = DoubleForm::metric(n);
    let samples: Vec<S> = (0..=n)
        .map(|lam| Ok(linalg::det(h.sub(&g.scale(&S::from_i64(lam as i64)))?.entries(), n)))
        .collect::<Result<_>>()?;
    let direct = Polynomial::interpolate_at_integers(&samples);
    let cp = inv::char_poly_s(h)?;
    let mut worst = S::zero();
    let mut scale = S::zero();
    for (d, c) in cp.coeffs.iter().enumerate() {
        worst = larger(worst, (c.clone() - direct.coeff(d)).abs());
        scale = larger(scale, c.abs());
    }
    Ok(m.finish(worst, scale))
}

/// `s_k(A + B) = Σ_i ⟨s_{(k-i,i)}(A), B^{k-i}⟩ / (k-i)!`.
pub fn check_s_k_of_sum<S: Scalar>(a: &DoubleForm<S>, b: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(a)?;
    range_check("k", k, 0, n)?;
    let m = meta("s_k_of_sum", "s_k of a sum through (r,q) cofactors", &[("n", n), ("k", k)]);
    let lhs = linalg_minor_sum(&a.add(b)?, k);
    Ok(m.scalars(lhs, inv::s_k_of_sum(a, b, k)?))
}

/// `(2q)! s_{2q}(h) = Σ_{r=0}^q ((-1)^{r+q}/(r!)^2) |c^r h^q|^2`, symmetric `h`.
pub fn check_s2q<S: Scalar>(h: &DoubleForm<S>, q: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    require_symmetric(h, "the s_2q formula")?;
    range_check("q", q, 1, n / 2)?;
    let m = meta("s2q_formula", "(2q)! s_2q as a sum of squared contractions", &[("n", n), ("q", q)]);
    let lhs = factorial::<S>(2 * q) * linalg_minor_sum(h, 2 * q);
    Ok(m.scalars(lhs, squared_contractions(h, q)?))
}

/// The bilinear `s_{2q}` formula without the `(2q)!` normalization.
pub fn check_s2q_unnormalized<S: Scalar>(h: &DoubleForm<S>, q: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h)?;
    range_check("q", q, 1, n / 2)?;
    let m = meta("s2q_formula_unnormalized", "s_2q as a sum of squared contractions", &[("n", n), ("q", q)]);
    let lhs = linalg_minor_sum(h, 2 * q);
    Ok(m.scalars(lhs, squared_contractions(h, q)?))
}

/// `Σ_{r=0}^{pq} ((-1)^{r+pq}/(r!)^2) |c^r ω^q|^2`.
fn squared_contractions<S: Scalar>(w: &DoubleForm<S>, q: usize) -> Result<S> {
    let pq = w.p() * q;
    let mut c = w.power(q)?;
    let mut acc = S::zero();
    for r in 0..=pq {
        if r > 0 {
            c = c.contract();
        }
        let f = factorial::<S>(r);
        acc = acc + sign_pow::<S>(r + pq) * c.norm_squared() / (f.clone() * f);
    }
    Ok(acc)
}

/// `d/dt s_k(h0 + t v)` against `⟨t_{k-1}(h0), v⟩`.
pub fn check_jacobi<S: Scalar>(h0: &DoubleForm<S>, v: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    let n = require_bilinear(h0)?;
    let m = meta("jacobi", "Jacobi formula d/dt s_k = <t_{k-1}, h'>", &[("n", n), ("k", k)]);
    let (lhs, rhs) = inv::jacobi_derivative(h0, v, k)?;
    Ok(m.scalars(lhs, rhs))
}

/// Jacobi's formula with the metric varying as well.
pub fn check_jacobi_metric<S: Scalar>(
    h0: &DoubleForm<S>,
    v: &DoubleForm<S>,
    g0: &DoubleForm<S>,
    w: &DoubleForm<S>,
    k: usize,
) -> Result<IdentityResidual> {
    let n = require_bilinear(h0)?;
    let m = meta(
        "jacobi_metric",
        "Jacobi formula with varying metric <t_{k-1}, h'> + <t_k - s_k g, g'>",
        &[("n", n), ("k", k)],
    );
    let (lhs, rhs) = inv::jacobi_with_metric(h0, v, g0, w, k)?;
    Ok(m.scalars(lhs, rhs))
}

// ---- (2,2) and (p,p) forms ----

/// `T_n(R) = (c^n R^k/n!) g - c^{n-1} R^k/(n-1)! = 0`, `n = 2k`.
pub fn check_tn<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    let k = curvature_k(r)?;
    let n = r.n();
    if n % 2 == 1 || n == 0 {
        return Err(Error::Parity { what: "T_n", parity: "even", n });
    }
    let m = meta("tn_vanishes", "T_n(R) = 0 in even dimension", &[("n", n)]);
    let c1 = r.power(k)?.contract_times(n - 1);
    let c0 = scalar_of(&c1.contract());
    let terms = [
        DoubleForm::metric(n).scale(&(c0 * inv_fact(n))),
        c1.scale(&-inv_fact::<S>(n - 1)),
    ];
    m.form_terms((n, 1, 1), &terms)
}

fn n_terms<S: Scalar>(r: &DoubleForm<S>, k: usize, top: usize) -> Result<Vec<DoubleForm<S>>> {
    let n = r.n();
    let c2 = r.power(k)?.contract_times(top - 2);
    let c1 = c2.contract();
    let c0 = scalar_of(&c1.contract());
    let g = DoubleForm::metric(n);
    Ok(vec![
        c2.scale(&inv_fact(top - 2)),
        g.wedge(&c1)?.scale(&-inv_fact::<S>(top - 1)),
        DoubleForm::metric_power(n, 2)?.scale(&(c0 * inv_fact(top) / S::from_i64(2))),
    ])
}

/// `N_n(R) = 0`, `n = 2k ≥ 2`.
pub fn check_nn<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    let k = curvature_k(r)?;
    let n = r.n();
    if n % 2 == 1 || n < 2 {
        return Err(Error::Parity { what: "N_n", parity: "even", n });
    }
    let m = meta("nn_vanishes", "N_n(R) = 0 in even dimension", &[("n", n)]);
    m.form_terms((n, 2, 2), &n_terms(r, k, n)?)
}

/// `N_{n-1}(R) = 0`, `n = 2k+1 ≥ 3`.
pub fn check_nn_minus_1<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    let k = curvature_k(r)?;
    let n = r.n();
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Parity { what: "N_{n-1}", parity: "odd", n });
    }
    let m = meta("nn_minus_1_vanishes", "N_{n-1}(R) = 0 in odd dimension", &[("n", n)]);
    m.form_terms((n, 2, 2), &n_terms(r, k, n - 1)?)
}

/// `⟨c^{n-3}R^k/(n-3)!, R⟩ - ⟨c^{n-2}R^k/(n-2)!, cR⟩ + ⟨c^{n-1}R^k/(n-1)!, c^2R/2⟩ = 0`, odd `n`.
pub fn check_scalar_identity<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    let k = curvature_k(r)?;
    let n = r.n();
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Parity { what: "scalar identity", parity: "odd", n });
    }
    let m = meta("scalar_identity", "scalar identity of odd dimension", &[("n", n)]);
    let c3 = r.power(k)?.contract_times(n - 3);
    let c2 = c3.contract();
    let c1 = c2.contract();
    let cr = r.contract();
    let ccr = cr.contract();
    let terms = [
        c3.inner(r)? * inv_fact(n - 3),
        -(c2.inner(&cr)? * inv_fact(n - 2)),
        c1.inner(&ccr)? * inv_fact(n - 1) / S::from_i64(2),
    ];
    Ok(m.scalar_terms(&terms))
}

/// `h_{(r,pq)}(ω) = 0` with `pq = p(k-i)`, `n - pq + 1 ≤ r ≤ pq`.
pub fn check_higher_identities<S: Scalar>(w: &DoubleForm<S>, k: usize, i: usize, r: usize) -> Result<IdentityResidual> {
    let (n, p) = (w.n(), w.p());
    if w.q() != p || p == 0 {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (p,p), p ≥ 1".into(),
            got: format!("bidegree {:?}", w.bidegree()),
        });
    }
    require_symmetric(w, "the higher identities")?;
    range_check("i", i, 0, k)?;
    let pq = p * (k - i);
    range_check("r", r, (n + 1).saturating_sub(pq), pq.min(n))?;
    let m = meta(
        "higher_identities",
        "h_(r,pk-pi)(ω) = 0 for n-pk+pi+1 <= r <= pk-pi",
        &[("n", n), ("p", p), ("k", k), ("i", i), ("r", r)],
    );
    let terms = inv::h_rpq_terms(w, r, k - i, &Metric::euclidean(n))?;
    m.form_terms((n, r, r), &terms)
}

/// `h_{(r,n-2i)}(R) = 0` for `2i+1 ≤ r ≤ n-2i` (even `n`), or
/// `h_{(r,n-2i-1)}(R) = 0` for `2i+2 ≤ r ≤ n-2i-1` (odd `n`).
pub fn check_even_odd<S: Scalar>(rr: &DoubleForm<S>, r: usize, i: usize) -> Result<IdentityResidual> {
    let k = curvature_k(rr)?;
    let n = rr.n();
    range_check("i", i, 0, k)?;
    let (lo, hi) = if n.is_multiple_of(2) {
        (2 * i + 1, n - 2 * i)
    } else {
        (2 * i + 2, n - 2 * i - 1)
    };
    range_check("r", r, lo, hi)?;
    let m = meta("even_odd", "vanishing of h_(r,2q)(R) in the stated ranges", &[("n", n), ("r", r), ("i", i)]);
    let terms = inv::h_rpq_terms(rr, r, k - i, &Metric::euclidean(n))?;
    m.form_terms((n, r, r), &terms)
}

/// `c h_{(r,pq)}(ω) = (n-pq-r+1) h_{(r-1,pq)}(ω)` for `1 ≤ r ≤ n-pq`.
pub fn check_general_newton_hrpq<S: Scalar>(w: &DoubleForm<S>, r: usize, q: usize) -> Result<IdentityResidual> {
    let (n, p) = (w.n(), w.p());
    let pq = p * q;
    range_check("pq", pq, 0, n)?;
    range_check("r", r, 1, n - pq)?;
    let m = meta(
        "general_newton_hrpq",
        "general Newton identity for h_(r,pq)",
        &[("n", n), ("p", p), ("r", r), ("q", q)],
    );
    let lhs = inv::h_rpq_hodge(w, r, q)?.contract();
    let rhs = inv::h_rpq_hodge(w, r - 1, q)?.scale(&S::from_i64((n - pq - r + 1) as i64));
    m.forms(&lhs, &rhs)
}

/// `c T_{2k}(R) = (n-2k) h_{2k}(R)`.
pub fn check_newton_t2k<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("2k + 1", 2 * k + 1, 1, n)?;
    let m = meta("newton_t2k", "c T_2k = (n-2k) h_2k", &[("n", n), ("k", k)]);
    let lhs = scalar_of(&inv::t2k(r, k)?.contract());
    let rhs = S::from_i64((n - 2 * k) as i64) * inv::h2k_contraction(r, k)?;
    Ok(m.scalars(lhs, rhs))
}

/// `c N_{2k}(R) = (n-2k-1) T_{2k}(R)`.
pub fn check_newton_n2k<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("2k + 2", 2 * k + 2, 2, n)?;
    let m = meta("newton_n2k", "c N_2k = (n-2k-1) T_2k", &[("n", n), ("k", k)]);
    let lhs = inv::n2k(r, k)?.contract();
    let t = if k == 0 {
        DoubleForm::metric(n)
    } else {
        inv::t2k_contraction(r, k)?
    };
    m.forms(&lhs, &t.scale(&S::from_i64((n - 2 * k - 1) as i64)))
}

/// `h_{2k+2}(R) = ⟨N_{2k}(R), R⟩`.
pub fn check_h2k2_via_n<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("2k + 2", 2 * k + 2, 4, n)?;
    let m = meta("h2k2_laplace", "h_{2k+2} = <N_2k, R>", &[("n", n), ("k", k)]);
    let lhs = inv::h2k(r, k + 1)?;
    Ok(m.scalars(lhs, inv::n2k_contraction(r, k)?.inner(r)?))
}

/// `h_{2k+2} = ⟨c^{2k-2}R^k/(2k-2)!, R⟩ - ⟨c^{2k-1}R^k/(2k-1)!, cR⟩ + h_{2k} h_2`.
pub fn check_h2k2_contractions<S: Scalar>(r: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("2k + 2", 2 * k + 2, 4, n)?;
    let m = meta("h2k2_three_contractions", "h_{2k+2} from the last three contractions of R^k", &[("n", n), ("k", k)]);
    let lhs = inv::h2k(r, k + 1)?;
    let c2 = r.power(k)?.contract_times(2 * k - 2);
    let c1 = c2.contract();
    let rhs = c2.inner(r)? * inv_fact(2 * k - 2) - c1.inner(&r.contract())? * inv_fact(2 * k - 1)
        + inv::h2k(r, k)? * inv::h2k(r, 1)?;
    Ok(m.scalars(lhs, rhs))
}

/// Avez: `h_4 = |R|^2 - |cR|^2 + |c^2R|^2/4`.
pub fn check_avez<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("n", n, 4, usize::MAX)?;
    let m = meta("avez", "Avez formula", &[("n", n)]);
    let c1 = r.contract();
    let c2 = c1.contract();
    let rhs = r.norm_squared() - c1.norm_squared() + c2.norm_squared() / S::from_i64(4);
    Ok(m.scalars(inv::h2k(r, 2)?, rhs))
}

/// `h_{4q} = Σ_{r=0}^{2q} ((-1)^r/(r!)^2) |c^r R^q|^2` for `n ≥ 4q`.
pub fn check_general_avez<S: Scalar>(r: &DoubleForm<S>, q: usize) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("4q", 4 * q, 4, n)?;
    let m = meta("general_avez", "general Avez formula", &[("n", n), ("q", q)]);
    Ok(m.scalars(inv::h2k(r, 2 * q)?, squared_contractions(r, q)?))
}

/// `h_8 = |R^2|^2 - |cR^2|^2 + |c^2R^2|^2/4 - |c^3R^2|^2/36 + |c^4R^2|^2/576`.
pub fn check_h8_formula<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    range_check("n", n, 8, usize::MAX)?;
    let m = meta("h8_formula", "five-term formula for h_8", &[("n", n)]);
    let coeffs = [(1, 1), (-1, 1), (1, 4), (-1, 36), (1, 576)];
    let mut c = r.power(2)?;
    let mut rhs = S::zero();
    for (i, (a, b)) in coeffs.iter().enumerate() {
        if i > 0 {
            c = c.contract();
        }
        rhs = rhs + S::from_ratio(*a, *b) * c.norm_squared();
    }
    Ok(m.scalars(inv::h2k(r, 4)?, rhs))
}

/// `c^{2pq}(ω^{2q})/(2pq)! = ⟨h_{(pq,pq)}(ω), ω^q⟩ = Σ_r ((-1)^{r+pq}/(r!)^2) |c^r ω^q|^2`.
pub fn check_general_laplace_pp<S: Scalar>(w: &DoubleForm<S>, q: usize) -> Result<IdentityResidual> {
    let (n, p) = (w.n(), w.p());
    require_symmetric(w, "the (p,p) Laplace expansion")?;
    range_check("2pq", 2 * p * q, 2, n)?;
    let m = meta("general_laplace_pp", "Laplace expansion for (p,p) forms", &[("n", n), ("p", p), ("q", q)]);
    let lhs = scalar_of(&w.power(2 * q)?.contract_times(2 * p * q)) * inv_fact(2 * p * q);
    let mid = inv::h_rpq_hodge(w, p * q, q)?.inner(&w.power(q)?)?;
    let rhs = squared_contractions(w, q)?;
    let worst = larger((lhs.clone() - mid).abs(), (lhs.clone() - rhs).abs());
    Ok(m.finish(worst, lhs.abs()))
}

/// `h_n(R - λ g^2/2)` sampled against the coefficients built from `h_{2i}(R)`.
pub fn check_char_poly_hn<S: Scalar>(r: &DoubleForm<S>) -> Result<IdentityResidual> {
    curvature_k(r)?;
    let n = r.n();
    let k = n / 2;
    let m = meta("char_poly_hn", "h_n characteristic polynomial", &[("n", n)]);
    let cp = inv::char_poly_hn(r)?;
    let g2 = DoubleForm::metric_power(n, 2)?.scale(&S::from_ratio(1, 2));
    let samples: Vec<S> = (0..=k)
        .map(|lam| {
            let x = r.sub(&g2.scale(&S::from_i64(lam as i64)))?;
            Ok(scalar_of(&x.power(k)?.hodge()))
        })
        .collect::<Result<_>>()?;
    let direct = Polynomial::interpolate_at_integers(&samples);
    let mut worst = S::zero();
    let mut scale = S::zero();
    for (d, c) in cp.coeffs.iter().enumerate() {
        worst = larger(worst, (c.clone() - direct.coeff(d)).abs());
        scale = larger(scale, c.abs());
    }
    Ok(m.finish(worst, scale))
}

/// `d/dt h_{2k}(R0 + tV) = ⟨k N_{2k-2}(R0), V⟩`.
pub fn check_jacobi_double_form<S: Scalar>(r0: &DoubleForm<S>, v: &DoubleForm<S>, k: usize) -> Result<IdentityResidual> {
    let m = meta("jacobi_double_form", "d/dt h_2k = <k N_{2k-2}, R'>", &[("n", r0.n()), ("k", k)]);
    let (lhs, rhs) = inv::jacobi_double_form(r0, v, k)?;
    Ok(m.scalars(lhs, rhs))
}

pub fn check_jacobi_double_form_metric<S: Scalar>(
    r0: &DoubleForm<S>,
    v: &DoubleForm<S>,
    g0: &DoubleForm<S>,
    w: &DoubleForm<S>,
    k: usize,
) -> Result<IdentityResidual> {
    let m = meta(
        "jacobi_double_form_metric",
        "d/dt h_2k = <k N_{2k-2}, R'> + <T_2k - h_2k g, g'>",
        &[("n", r0.n()), ("k", k)],
    );
    let (lhs, rhs) = inv::jacobi_double_form_with_metric(r0, v, g0, w, k)?;
    Ok(m.scalars(lhs, rhs))
}

/// `d/dt` of an interpolated scalar path, exposed for ad hoc checks.
pub fn interpolated_derivative<S: Scalar>(degree: usize, f: impl FnMut(S) -> Result<S>) -> Result<S> {
    derivative_at_zero(degree, f)
}

// ---- suite ----

/// Dimensions and seeds for [`run_suite`]; `only` keeps a single identity name.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub seeds: Vec<u64>,
    pub only: Option<String>,
}

/// Largest dimension at which the Jacobi checks run in the suite.
pub const JACOBI_MAX_DIM: usize = 5;

type Job = (&'static str, String, Box<dyn Fn() -> Result<IdentityResidual> + Send + Sync>);

struct Jobs {
    only: Option<String>,
    jobs: Vec<Job>,
}

impl Jobs {
    fn push<F>(&mut self, name: &'static str, fixture: &str, f: F)
    where
        F: Fn() -> Result<IdentityResidual> + Send + Sync + 'static,
    {
        if self.only.as_deref().is_some_and(|o| o != name) {
            return;
        }
        self.jobs.push((name, fixture.to_string(), Box::new(f)));
    }
}

struct Fx<S> {
    label: String,
    form: Arc<DoubleForm<S>>,
}

fn fx<S>(label: impl Into<String>, form: DoubleForm<S>) -> Fx<S> {
    Fx {
        label: label.into(),
        form: Arc::new(form),
    }
}

fn bilinear_fixtures<S: Scalar>(n: usize, seed: u64, first: bool) -> Vec<Fx<S>> {
    let mut out = Vec::new();
    if first {
        out.push(fx("metric", DoubleForm::metric(n)));
        out.push(fx("nilpotent", fixtures::nilpotent(n)));
    }
    out.push(fx(format!("rank_one#{seed}"), fixtures::rank_one(n, seed)));
    out.push(fx(format!("symmetric#{seed}"), fixtures::random_bilinear(n, seed, Symmetry::Symmetric)));
    out.push(fx(format!("general#{seed}"), fixtures::random_bilinear(n, seed, Symmetry::General)));
    out
}

fn curvature_fixtures<S: Scalar>(n: usize, seed: u64, first: bool) -> Vec<Fx<S>> {
    let mut out = Vec::new();
    if first {
        out.push(fx("constant_curvature", fixtures::constant_curvature(n, S::one())));
    }
    out.push(fx(format!("degenerate_bianchi#{seed}"), fixtures::degenerate_bianchi(n, seed)));
    out.push(fx(format!("bianchi#{seed}"), fixtures::random_bianchi(n, 2, 2, seed)));
    out
}

fn push_bilinear<S: Scalar>(jobs: &mut Jobs, n: usize, seed: u64, first: bool) {
    for f in bilinear_fixtures::<S>(n, seed, first) {
        bilinear_jobs(jobs, &f, seed);
    }
}

fn bilinear_jobs<S: Scalar>(jobs: &mut Jobs, f: &Fx<S>, seed: u64) {
    let n = f.form.n();
    let symmetric = f.form.is_symmetric();
    let h = f.form.clone();
    let l = f.label.as_str();
    {
        let h = h.clone();
        jobs.push("cayley_hamilton", l, move || check_cayley_hamilton(&h));
    }
    if symmetric {
        for i in 0..=n {
            for r in i + 1..=n.saturating_sub(i) {
                let h = h.clone();
                jobs.push("general_cayley_hamilton", l, move || check_general_cayley_hamilton(&h, r, i));
            }
        }
        for q in 1..=n / 2 {
            let h = h.clone();
            jobs.push("s2q_formula", l, move || check_s2q(&h, q));
        }
    }
    for k in 0..n {
        let (h1, h2) = (h.clone(), h.clone());
        jobs.push("laplace", l, move || check_laplace(&h1, k));
        jobs.push("girard_newton", l, move || check_girard_newton(&h2, k));
    }
    {
        let h = h.clone();
        jobs.push("laplace_refined", l, move || check_laplace_refined(&h));
    }
    for r in 0..=n {
        let h = h.clone();
        jobs.push("block_laplace", l, move || check_block_laplace(&h, r));
    }
    for k in 0..=n {
        for p in 0..=n - k {
            for q in 0..=k {
                let h = h.clone();
                jobs.push("lower_block_laplace", l, move || check_lower_block(&h, k, p, q));
            }
        }
    }
    for r in 1..=n {
        let h = h.clone();
        jobs.push("newton_power_sums", l, move || check_newton_recurrence(&h, r));
    }
    for q in 0..=n {
        for r in 1..=n - q {
            let h = h.clone();
            jobs.push("general_newton_srq", l, move || check_general_newton_srq(&h, r, q));
        }
    }
    {
        let h = h.clone();
        jobs.push("char_poly_s", l, move || check_char_poly_s(&h));
    }
    let b = Arc::new(fixtures::random_bilinear::<S>(n, seed.wrapping_add(1000), Symmetry::General));
    for k in 0..=n {
        let (h, b) = (h.clone(), b.clone());
        jobs.push("s_k_of_sum", l, move || check_s_k_of_sum(&h, &b, k));
    }
    if n <= JACOBI_MAX_DIM {
        for k in 1..=n {
            let (h, b) = (h.clone(), b.clone());
            jobs.push("jacobi", l, move || check_jacobi(&h, &b, k));
        }
        if symmetric {
            let v = Arc::new(fixtures::random_bilinear::<S>(n, seed.wrapping_add(2000), Symmetry::Symmetric));
            let w = Arc::new(fixtures::random_bilinear::<S>(n, seed.wrapping_add(3000), Symmetry::Symmetric));
            let g0 = Arc::new(fixtures::random_metric::<S>(n, seed.wrapping_add(4000)));
            for k in 1..=n {
                let (h, v, w, g0) = (h.clone(), v.clone(), w.clone(), g0.clone());
                jobs.push("jacobi_metric", l, move || check_jacobi_metric(&h, &v, &g0, &w, k));
            }
        }
    }
}

fn push_curvature<S: Scalar>(jobs: &mut Jobs, n: usize, seed: u64, first: bool) {
    for f in curvature_fixtures::<S>(n, seed, first) {
        curvature_jobs(jobs, &f, seed);
    }
}

fn curvature_jobs<S: Scalar>(jobs: &mut Jobs, f: &Fx<S>, seed: u64) {
    let n = f.form.n();
    let r = f.form.clone();
    let l = f.label.as_str();
    let k = n / 2;
    if n.is_multiple_of(2) {
        let (a, b, c) = (r.clone(), r.clone(), r.clone());
        jobs.push("tn_vanishes", l, move || check_tn(&a));
        jobs.push("nn_vanishes", l, move || check_nn(&b));
        jobs.push("char_poly_hn", l, move || check_char_poly_hn(&c));
    } else if n >= 3 {
        let (a, b) = (r.clone(), r.clone());
        jobs.push("nn_minus_1_vanishes", l, move || check_nn_minus_1(&a));
        jobs.push("scalar_identity", l, move || check_scalar_identity(&b));
    }
    for i in 0..=k {
        let (lo, hi) = if n.is_multiple_of(2) {
            (2 * i + 1, n - 2 * i)
        } else {
            (2 * i + 2, n - 2 * i - 1)
        };
        for rr in lo..=hi {
            let r = r.clone();
            jobs.push("even_odd", l, move || check_even_odd(&r, rr, i));
        }
    }
    for kk in 0..=k {
        if 2 * kk < n {
            let r = r.clone();
            jobs.push("newton_t2k", l, move || check_newton_t2k(&r, kk));
        }
        if 2 * kk + 2 <= n {
            let r = r.clone();
            jobs.push("newton_n2k", l, move || check_newton_n2k(&r, kk));
        }
        if kk >= 1 && 2 * kk + 2 <= n {
            let (a, b) = (r.clone(), r.clone());
            jobs.push("h2k2_laplace", l, move || check_h2k2_via_n(&a, kk));
            jobs.push("h2k2_three_contractions", l, move || check_h2k2_contractions(&b, kk));
        }
    }
    for q in 0..=k {
        for rr in 1..=n - 2 * q {
            let r = r.clone();
            jobs.push("general_newton_hrpq", l, move || check_general_newton_hrpq(&r, rr, q));
        }
    }
    if n >= 4 {
        let r2 = r.clone();
        jobs.push("avez", l, move || check_avez(&r2));
    }
    for q in 1..=n / 4 {
        let r2 = r.clone();
        jobs.push("general_avez", l, move || check_general_avez(&r2, q));
    }
    if n >= 8 {
        let r2 = r.clone();
        jobs.push("h8_formula", l, move || check_h8_formula(&r2));
    }
    if n <= JACOBI_MAX_DIM {
        let v = Arc::new(fixtures::random_bianchi::<S>(n, 2, 1, seed.wrapping_add(5000)));
        let w = Arc::new(fixtures::random_bilinear::<S>(n, seed.wrapping_add(6000), Symmetry::Symmetric));
        let g0 = Arc::new(fixtures::random_metric::<S>(n, seed.wrapping_add(7000)));
        for kk in 1..=k {
            let (a, v1) = (r.clone(), v.clone());
            jobs.push("jacobi_double_form", l, move || check_jacobi_double_form(&a, &v1, kk));
            let (a, v1, w1, g1) = (r.clone(), v.clone(), w.clone(), g0.clone());
            jobs.push("jacobi_double_form_metric", l, move || {
                check_jacobi_double_form_metric(&a, &v1, &g1, &w1, kk)
            });
        }
    }
}

fn push_higher<S: Scalar>(jobs: &mut Jobs, n: usize, seed: u64) {
    for p in 1..=3.min(n) {
        let w = Arc::new(fixtures::random_bianchi::<S>(n, p, 1, seed.wrapping_add(100 * p as u64)));
        higher_jobs(jobs, w, &format!("bianchi_p{p}#{seed}"));
    }
}

fn higher_jobs<S: Scalar>(jobs: &mut Jobs, w: Arc<DoubleForm<S>>, l: &str) {
    let (n, p) = (w.n(), w.p());
    let k = n / p;
    for i in 0..=k {
        let pq = p * (k - i);
        for r in (n + 1).saturating_sub(pq)..=pq.min(n) {
            let w = w.clone();
            jobs.push("higher_identities", l, move || check_higher_identities(&w, k, i, r));
        }
    }
    for q in 1..=n / (2 * p) {
        let w = w.clone();
        jobs.push("general_laplace_pp", l, move || check_general_laplace_pp(&w, q));
    }
}

fn push_calculus<S: Scalar>(jobs: &mut Jobs, n: usize, seed: u64) {
    let mut salt = 0u64;
    let l = format!("random#{seed}");
    for p in 0..=n {
        for q in 0..=n {
            if p + q > 4 && n > 4 {
                continue;
            }
            salt += 1;
            let s = seed.wrapping_mul(7919).wrapping_add(salt * 31);
            let w = fixtures::random_double_form::<S>(n, p, q, s);
            calculus_jobs(jobs, Arc::new(w), s + 1, &l);
        }
    }
    for p in 1..=n.min(3) {
        let w = Arc::new(fixtures::random_bianchi::<S>(n, p, 2, seed.wrapping_add(50 + p as u64)));
        star_expansion_jobs(jobs, w, &format!("bianchi_p{p}#{seed}"));
    }
}

/// Calculus checks on `w`, paired with random forms drawn from `seed`.
fn calculus_jobs<S: Scalar>(jobs: &mut Jobs, w: Arc<DoubleForm<S>>, seed: u64, l: &str) {
    let (n, p, q) = (w.n(), w.p(), w.q());
    let t = Arc::new(fixtures::random_double_form::<S>(n, p, q, seed));
    if p < n && q < n {
        let u = Arc::new(fixtures::random_double_form::<S>(n, p + 1, q + 1, seed + 1));
        let (a, c) = (w.clone(), w.clone());
        jobs.push("adjointness", l, move || check_adjointness(&a, &u));
        jobs.push("star_contraction_g", l, move || check_star_g(&c));
    }
    if p >= 1 && q >= 1 {
        let a = w.clone();
        jobs.push("star_contraction_c", l, move || check_star_c(&a));
    }
    let (a, b) = (w.clone(), t.clone());
    jobs.push("inner_via_star", l, move || check_inner_via_star(&a, &b));
    jobs.push("composition_contraction", l, move || check_composition_contraction(&w, &t));
}

fn star_expansion_jobs<S: Scalar>(jobs: &mut Jobs, w: Arc<DoubleForm<S>>, l: &str) {
    for k in w.p()..=w.n() {
        let w = w.clone();
        jobs.push("star_expansion", l, move || check_star_expansion(&w, k));
    }
}

fn push_pfaffian<S: Scalar>(jobs: &mut Jobs, n: usize, seed: u64) {
    if n.is_multiple_of(2) {
        let h = fixtures::random_bilinear::<S>(n, seed, Symmetry::Skew);
        let w = Arc::new(pfaffian::skew_to_form(&h).expect("skew input"));
        jobs.push("pfaffian_squared", &format!("skew#{seed}"), move || pfaffian::check_pf_squared(&w, 2));
    }
    let conjecture = match n {
        4 => Some(2),
        6 => Some(3),
        _ => None,
    };
    if let Some(r) = conjecture {
        let w = Arc::new(fixtures::random_form::<S>(n, n, seed));
        jobs.push("pfaffian_power_vs_hyperdet", &format!("form{n}#{seed}"), move || {
            pfaffian::check_pf_squared(&w, r)
        });
    }
}

fn execute<S: Scalar>(jobs: Jobs) -> Vec<IdentityResidual> {
    let mut out: Vec<IdentityResidual> = jobs
        .jobs
        .par_iter()
        .map(|(name, fixture, f)| match f() {
            Ok(r) => r.on(fixture.clone()),
            Err(e) => meta(name, "evaluation error", &[])
                .finish(S::one(), S::one())
                .on(fixture.clone())
                .with_detail(e.to_string()),
        })
        .collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Every theorem check over the configured fixtures, sorted by identity name,
/// then parameters, then fixture label.
pub fn run_suite<S: Scalar>(config: &SuiteConfig) -> Vec<IdentityResidual> {
    let mut jobs = Jobs {
        only: config.only.clone(),
        jobs: Vec::new(),
    };
    for &n in &config.dims {
        for (idx, &seed) in config.seeds.iter().enumerate() {
            let first = idx == 0;
            push_bilinear::<S>(&mut jobs, n, seed, first);
            push_curvature::<S>(&mut jobs, n, seed, first);
            push_higher::<S>(&mut jobs, n, seed);
            push_calculus::<S>(&mut jobs, n, seed);
            push_pfaffian::<S>(&mut jobs, n, seed);
        }
    }
    execute::<S>(jobs)
}

/// Every check that applies to a single double form, judged by its shape:
/// bilinear checks for `(1,1)`, curvature checks for Bianchi `(2,2)`, the
/// higher identities for Bianchi `(p,p)` and the calculus checks for all.
/// `seed` drives the auxiliary forms some checks pair `w` with.
pub fn run_on_form<S: Scalar>(w: &DoubleForm<S>, label: &str, seed: u64, only: Option<&str>) -> Vec<IdentityResidual> {
    let mut jobs = Jobs {
        only: only.map(String::from),
        jobs: Vec::new(),
    };
    let (n, p, q) = (w.n(), w.p(), w.q());
    let f = fx(label, w.clone());
    if (p, q) == (1, 1) {
        bilinear_jobs(&mut jobs, &f, seed);
        if w.is_skew() && n % 2 == 0 {
            let e = Arc::new(pfaffian::skew_to_form(w).expect("skew input"));
            jobs.push("pfaffian_squared", label, move || pfaffian::check_pf_squared(&e, 2));
        }
    }
    let bianchi = p == q && p >= 1 && w.is_symmetric() && w.bianchi_residual().is_ok_and(|r| r.is_zero());
    if bianchi {
        if p == 2 {
            curvature_jobs(&mut jobs, &f, seed);
        }
        higher_jobs(&mut jobs, f.form.clone(), label);
        star_expansion_jobs(&mut jobs, f.form.clone(), label);
    }
    calculus_jobs(&mut jobs, f.form, seed, label);
    execute::<S>(jobs)
}

/// Names of the identities [`run_suite`] can execute.
pub const SUITE_IDENTITIES: &[&str] = &[
    "adjointness",
    "avez",
    "block_laplace",
    "cayley_hamilton",
    "char_poly_hn",
    "char_poly_s",
    "composition_contraction",
    "even_odd",
    "general_avez",
    "general_cayley_hamilton",
    "general_laplace_pp",
    "general_newton_hrpq",
    "general_newton_srq",
    "girard_newton",
    "h2k2_laplace",
    "h2k2_three_contractions",
    "h8_formula",
    "higher_identities",
    "inner_via_star",
    "jacobi",
    "jacobi_double_form",
    "jacobi_double_form_metric",
    "jacobi_metric",
    "laplace",
    "laplace_refined",
    "lower_block_laplace",
    "newton_n2k",
    "newton_power_sums",
    "newton_t2k",
    "nn_minus_1_vanishes",
    "nn_vanishes",
    "pfaffian_power_vs_hyperdet",
    "pfaffian_squared",
    "s2q_formula",
    "s_k_of_sum",
    "scalar_identity",
    "star_contraction_c",
    "star_contraction_g",
    "star_expansion",
    "tn_vanishes",
];
