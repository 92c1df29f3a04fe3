//! Pfaffians, hyperpfaffians and hyperdeterminants.
//!
//! A `2k`-form on `R^n` with `n = 2kq` has Pfaffian `*(ω^q/q!)`. Splitting the
//! arguments of an `rk`-form into `r` blocks of `k` embeds it as a
//! `(k,..,k)` multiform, and a multiform with `n = pk` has hyperdeterminant
//! `*(ω^p/p!)`. The embedding carries no normalization constant.

use crate::dform::DoubleForm;
use crate::error::{Error, Result};
use crate::exterior::{ExteriorForm, MultiForm};
use crate::identities::{meta, IdentityResidual};
use crate::multiindex::{mask_merge_sign, subsets, MultiIndex};
use crate::scalar::{factorial, powi, Scalar};

/// `Pf(ω) = *(ω^q/q!)` for a form of even degree `2k` with `n = 2kq`.
pub fn pf<S: Scalar>(w: &ExteriorForm<S>) -> Result<S> {
    let (n, d) = (w.n(), w.degree());
    if d == 0 || d % 2 == 1 {
        return Err(Error::Parity { what: "Pfaffian form degree", parity: "even", n: d });
    }
    if n % d != 0 {
        return Err(Error::Divisibility { what: "dimension", n, by: d });
    }
    let q = n / d;
    let top = w.power(q)?.hodge();
    Ok(top.as_scalar().cloned().expect("degree zero") / factorial::<S>(q))
}

/// The 2-form `Σ_{i<j} h(e_i,e_j) e^i ∧ e^j` of a skew bilinear form.
pub fn skew_to_form<S: Scalar>(h: &DoubleForm<S>) -> Result<ExteriorForm<S>> {
    if h.bidegree() != (1, 1) {
        return Err(Error::ShapeMismatch {
            expected: "bidegree (1,1)".into(),
            got: format!("bidegree {:?}", h.bidegree()),
        });
    }
    if !h.is_skew() {
        return Err(Error::NotSkew("skew_to_form"));
    }
    let n = h.n();
    let mut out = ExteriorForm::zeros(n, 2)?;
    for i in subsets(n, 2) {
        let ix = i.indices();
        out.set(&i, h.at(ix[0], ix[1]).clone());
    }
    Ok(out)
}

/// Pfaffian of a skew bilinear form.
pub fn pf_bilinear<S: Scalar>(h: &DoubleForm<S>) -> Result<S> {
    pf(&skew_to_form(h)?)
}

/// `ω` as an `r`-slot multiform: the entry at `(I_1,..,I_r)` is `ω` evaluated
/// on the concatenated arguments `(e_{I_1},..,e_{I_r})`.
pub fn embed<S: Scalar>(w: &ExteriorForm<S>, r: usize) -> Result<MultiForm<S>> {
    let (n, d) = (w.n(), w.degree());
    if r == 0 || d % r != 0 {
        return Err(Error::Divisibility { what: "form degree", n: d, by: r });
    }
    let k = d / r;
    let blocks: Vec<MultiIndex> = subsets(n, k).collect();
    let mut out = MultiForm::zeros(n, k, r)?;
    let mut tuple = vec![0usize; r];
    loop {
        let mut mask = 0u64;
        let mut sign = 1i8;
        let mut disjoint = true;
        for &t in &tuple {
            match mask_merge_sign(mask, blocks[t].bits()) {
                Some(s) => {
                    sign *= s;
                    mask |= blocks[t].bits();
                }
                None => {
                    disjoint = false;
                    break;
                }
            }
        }
        if disjoint {
            let union = MultiIndex::new(n, &crate::multiindex::mask_indices(mask).collect::<Vec<_>>())?;
            let v = w.get(&union).clone();
            let idx: Vec<MultiIndex> = tuple.iter().map(|&t| blocks[t]).collect();
            out.set(&idx, if sign > 0 { v } else { -v });
        }
        // odometer over r-tuples of blocks
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < blocks.len() {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// The `r = 2` embedding as a `(k,k)` double form.
pub fn embed_double<S: Scalar>(w: &ExteriorForm<S>) -> Result<DoubleForm<S>> {
    embed(w, 2)?.to_double_form()
}

/// `Det(ω) = *(ω^p/p!)` for a multiform with slot degree `k` and `n = pk`.
pub fn hyperdet<S: Scalar>(w: &MultiForm<S>) -> Result<S> {
    let (n, k) = (w.n(), w.slot_degree());
    if k == 0 || n % k != 0 {
        return Err(Error::Divisibility { what: "dimension", n, by: k });
    }
    let p = n / k;
    let top = w.power(p)?.hodge();
    Ok(top.as_scalar().cloned().expect("degree zero") / factorial::<S>(p))
}

/// Compares `Pf(ω)^r` with `Det` of the `r`-slot embedding of `ω`.
///
/// The skew bilinear case (`deg ω = 2`, `r = 2`) is the classical
/// `Pf^2 = det` and is asserted; every other case is reported only. For
/// `r = 2` the detail also records `h_n` of the embedded double form.
pub fn check_pf_squared<S: Scalar>(w: &ExteriorForm<S>, r: usize) -> Result<IdentityResidual> {
    let (n, d) = (w.n(), w.degree());
    let theorem = d == 2 && r == 2;
    let name = if theorem { "pfaffian_squared" } else { "pfaffian_power_vs_hyperdet" };
    let reference = if theorem {
        "Pf(h)^2 = det(h) for skew h"
    } else {
        "Pf(ω)^r = Det(ω) (conjectural)"
    };
    let mut m = meta(name, reference, &[("n", n), ("degree", d), ("r", r)]);
    if !theorem {
        m = m.conjecture();
    }
    let pfr = powi(&pf(w)?, r);
    let emb = embed(w, r)?;
    let det = hyperdet(&emb)?;
    let mut detail = format!("Pf^r = {}, Det = {}, ratio = {}", pfr.render(), det.render(), ratio(&pfr, &det));
    if r == 2 {
        let e = emb.to_double_form()?;
        let hn = e.power(n / e.p())?.hodge();
        let hn = hn.as_scalar().cloned().expect("degree zero");
        detail.push_str(&format!(", h_n = {}, Pf^2/h_n = {}", hn.render(), ratio(&pfr, &hn)));
    }
    Ok(m.scalars(pfr, det).with_detail(detail))
}

fn ratio<S: Scalar>(a: &S, b: &S) -> String {
    if b.is_zero() {
        if a.is_zero() { "0/0".into() } else { "undefined".into() }
    } else {
        (a.clone() / b.clone()).render()
    }
}
