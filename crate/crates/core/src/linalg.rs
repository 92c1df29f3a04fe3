//! Small dense square-matrix helpers over any [`Scalar`] (row-major `n × n`).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn pivot_row<S: Scalar>(m: &[S], n: usize, col: usize, from: usize) -> Option<usize> {
    let candidates = (from..n).filter(|&r| !m[r * n + col].is_zero());
    if S::EXACT {
        candidates.into_iter().next()
    } else {
        candidates.max_by(|&a, &b| {
            m[a * n + col]
                .abs()
                .partial_cmp(&m[b * n + col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

/// Inverse by Gauss-Jordan elimination; exact for rational scalars.
pub fn invert<S: Scalar>(m: &[S], n: usize) -> Result<Vec<S>> {
    assert_eq!(m.len(), n * n);
    let mut a = m.to_vec();
    let mut inv: Vec<S> = (0..n * n)
        .map(|i| if i / n == i % n { S::one() } else { S::zero() })
        .collect();
    for col in 0..n {
        let p = pivot_row(&a, n, col, col).ok_or(Error::Singular)?;
        if p != col {
            for c in 0..n {
                a.swap(p * n + c, col * n + c);
                inv.swap(p * n + c, col * n + c);
            }
        }
        let piv = a[col * n + col].clone();
        for c in 0..n {
            a[col * n + c] = a[col * n + c].clone() / piv.clone();
            inv[col * n + c] = inv[col * n + c].clone() / piv.clone();
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let f = a[r * n + col].clone();
            for c in 0..n {
                let da = f.clone() * a[col * n + c].clone();
                a[r * n + c] = a[r * n + c].clone() - da;
                let di = f.clone() * inv[col * n + c].clone();
                inv[r * n + c] = inv[r * n + c].clone() - di;
            }
        }
    }
    Ok(inv)
}

/// Determinant by elimination.
pub fn det<S: Scalar>(m: &[S], n: usize) -> S {
    assert_eq!(m.len(), n * n);
    let mut a = m.to_vec();
    let mut acc = S::one();
    for col in 0..n {
        let Some(p) = pivot_row(&a, n, col, col) else {
            return S::zero();
        };
        if p != col {
            for c in 0..n {
                a.swap(p * n + c, col * n + c);
            }
            acc = -acc;
        }
        let piv = a[col * n + col].clone();
        acc = acc * piv.clone();
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let f = a[r * n + col].clone() / piv.clone();
            for c in col..n {
                let d = f.clone() * a[col * n + c].clone();
                a[r * n + c] = a[r * n + c].clone() - d;
            }
        }
    }
    acc
}

pub fn is_symmetric<S: Scalar>(m: &[S], n: usize) -> bool {
    (0..n).all(|i| (0..i).all(|j| m[i * n + j] == m[j * n + i]))
}

/// Symmetric positive definiteness via the pivots of an unpivoted `LDLᵀ`.
pub fn is_positive_definite<S: Scalar>(m: &[S], n: usize) -> bool {
    if !is_symmetric(m, n) {
        return false;
    }
    let mut a = m.to_vec();
    for k in 0..n {
        let piv = a[k * n + k].clone();
        if piv <= S::zero() {
            return false;
        }
        for r in k + 1..n {
            let f = a[r * n + k].clone() / piv.clone();
            for c in k..n {
                let d = f.clone() * a[k * n + c].clone();
                a[r * n + c] = a[r * n + c].clone() - d;
            }
        }
    }
    true
}

pub fn matmul<S: Scalar>(a: &[S], b: &[S], rows: usize, inner: usize, cols: usize) -> Vec<S> {
    let mut out = vec![S::zero(); rows * cols];
    for i in 0..rows {
        for k in 0..inner {
            let x = &a[i * inner + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                let y = &b[k * cols + j];
                if !y.is_zero() {
                    out[i * cols + j] = out[i * cols + j].clone() + x.clone() * y.clone();
                }
            }
        }
    }
    out
}
