//! JSON tensor files.
//!
//! A file lists the nonzero entries of one tensor; omitted entries are zero.
//! Multi-indices are 0-based and strictly ascending. For a double form `row`
//! and `col` index the two blocks, for an exterior form `row` is the index and
//! `col` is empty, and for a multiform `row` is the first slot while `col`
//! concatenates the remaining slots. Values are decimal strings, `"a/b"` for
//! rationals.

use std::collections::BTreeSet;

use dforms::multiindex::subsets;
use dforms::{DoubleForm, ExteriorForm, MultiForm, MultiIndex, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    DoubleForm,
    Form,
    Multiform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarKind {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "float64")]
    Float64,
}

impl ScalarKind {
    pub fn of<S: Scalar>() -> Self {
        if S::EXACT {
            Self::Rational
        } else {
            Self::Float64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub row: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub col: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub n: usize,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub scalar: ScalarKind,
    pub entries: Vec<Entry>,
}

/// A decoded tensor.
#[derive(Clone, Debug, PartialEq)]
pub enum Tensor<S: Scalar> {
    Double(DoubleForm<S>),
    Form(ExteriorForm<S>),
    Multi(MultiForm<S>),
}

impl<S: Scalar> Tensor<S> {
    pub fn n(&self) -> usize {
        match self {
            Tensor::Double(w) => w.n(),
            Tensor::Form(w) => w.n(),
            Tensor::Multi(w) => w.n(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn field(v: Option<usize>, name: &str, kind: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| malformed(format!("a {kind} needs the field \"{name}\"")))
}

fn index(n: usize, ix: &[usize], expected: usize, at: usize) -> Result<MultiIndex, CliError> {
    if ix.len() != expected {
        return Err(malformed(format!(
            "entry {at}: multi-index {ix:?} has length {}, expected {expected}",
            ix.len()
        )));
    }
    MultiIndex::new(n, ix).map_err(|e| malformed(format!("entry {at}: {e}")))
}

impl TensorFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tensor files always serialize")
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Malformed(m) => malformed(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    /// Parses the entries as `S`. A float file cannot be read exactly.
    pub fn decode<S: Scalar>(&self) -> Result<Tensor<S>, CliError> {
        if S::EXACT && self.scalar == ScalarKind::Float64 {
            return Err(CliError::Usage("a float64 tensor file cannot be read in exact mode".into()));
        }
        let n = self.n;
        if n > dforms::multiindex::MAX_DIM {
            return Err(malformed(format!("n = {n} exceeds {}", dforms::multiindex::MAX_DIM)));
        }
        let mut seen = BTreeSet::new();
        let mut values = Vec::with_capacity(self.entries.len());
        for (at, e) in self.entries.iter().enumerate() {
            if !seen.insert((&e.row, &e.col)) {
                return Err(malformed(format!("entry {at}: duplicate position {:?} {:?}", e.row, e.col)));
            }
            let v = S::parse(&e.value)
                .ok_or_else(|| malformed(format!("entry {at}: cannot parse value {:?}", e.value)))?;
            values.push(v);
        }
        match self.kind {
            Kind::DoubleForm => {
                let p = field(self.p, "p", "double_form")?;
                let q = field(self.q, "q", "double_form")?;
                check_degree(p, n, "p")?;
                check_degree(q, n, "q")?;
                let mut w = DoubleForm::zeros(n, p, q)?;
                for (at, (e, v)) in self.entries.iter().zip(values).enumerate() {
                    let i = index(n, &e.row, p, at)?;
                    let j = index(n, &e.col, q, at)?;
                    w.set(&i, &j, v);
                }
                Ok(Tensor::Double(w))
            }
            Kind::Form => {
                let k = field(self.k, "k", "form")?;
                check_degree(k, n, "k")?;
                let mut w = ExteriorForm::zeros(n, k)?;
                for (at, (e, v)) in self.entries.iter().zip(values).enumerate() {
                    if !e.col.is_empty() {
                        return Err(malformed(format!("entry {at}: a form entry has no \"col\"")));
                    }
                    w.set(&index(n, &e.row, k, at)?, v);
                }
                Ok(Tensor::Form(w))
            }
            Kind::Multiform => {
                let k = field(self.k, "k", "multiform")?;
                let r = field(self.r, "r", "multiform")?;
                check_degree(k, n, "k")?;
                if r == 0 {
                    return Err(malformed("a multiform needs r >= 1"));
                }
                let mut w = MultiForm::zeros(n, k, r)?;
                for (at, (e, v)) in self.entries.iter().zip(values).enumerate() {
                    let mut slots = vec![index(n, &e.row, k, at)?];
                    if e.col.len() != k * (r - 1) {
                        return Err(malformed(format!(
                            "entry {at}: \"col\" must hold {} indices, got {}",
                            k * (r - 1),
                            e.col.len()
                        )));
                    }
                    for chunk in e.col.chunks(k.max(1)).take(r - 1) {
                        slots.push(index(n, chunk, k, at)?);
                    }
                    while slots.len() < r {
                        slots.push(MultiIndex::empty(n));
                    }
                    w.set(&slots, v);
                }
                Ok(Tensor::Multi(w))
            }
        }
    }

    /// The file listing every nonzero entry of `t`.
    pub fn encode<S: Scalar>(t: &Tensor<S>) -> Self {
        let mut out = TensorFile {
            n: t.n(),
            kind: Kind::DoubleForm,
            p: None,
            q: None,
            k: None,
            r: None,
            scalar: ScalarKind::of::<S>(),
            entries: Vec::new(),
        };
        match t {
            Tensor::Double(w) => {
                out.p = Some(w.p());
                out.q = Some(w.q());
                let rows: Vec<MultiIndex> = subsets(w.n(), w.p()).collect();
                let cols: Vec<MultiIndex> = subsets(w.n(), w.q()).collect();
                for (a, i) in rows.iter().enumerate() {
                    for (b, j) in cols.iter().enumerate() {
                        push(&mut out.entries, i.indices(), j.indices(), w.at(a, b));
                    }
                }
            }
            Tensor::Form(w) => {
                out.kind = Kind::Form;
                out.k = Some(w.degree());
                for i in subsets(w.n(), w.degree()) {
                    push(&mut out.entries, i.indices(), Vec::new(), w.get(&i));
                }
            }
            Tensor::Multi(w) => {
                out.kind = Kind::Multiform;
                out.k = Some(w.slot_degree());
                out.r = Some(w.slots());
                let axis: Vec<MultiIndex> = subsets(w.n(), w.slot_degree()).collect();
                for (flat, v) in w.coeffs().iter().enumerate() {
                    let mut slots = vec![0usize; w.slots()];
                    let mut rest = flat;
                    for s in slots.iter_mut().rev() {
                        *s = rest % axis.len();
                        rest /= axis.len();
                    }
                    let row = axis[slots[0]].indices();
                    let col = slots[1..].iter().flat_map(|&s| axis[s].indices()).collect();
                    push(&mut out.entries, row, col, v);
                }
            }
        }
        out
    }
}

fn check_degree(d: usize, n: usize, name: &str) -> Result<(), CliError> {
    if d > n {
        return Err(malformed(format!("{name} = {d} exceeds n = {n}")));
    }
    Ok(())
}

fn push<S: Scalar>(entries: &mut Vec<Entry>, row: Vec<usize>, col: Vec<usize>, v: &S) {
    if !v.is_zero() {
        entries.push(Entry { row, col, value: v.render() });
    }
}
