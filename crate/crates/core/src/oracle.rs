//! Definition-level reference semantics. Everything here is exponential time
//! and exists so that the fast kernels can be checked against it.

use crate::dform::DoubleForm;
use crate::error::{Error, Result};
use crate::exterior::{ExteriorForm, MultiForm};
use crate::multiindex::{subsets, MultiIndex};
use crate::scalar::{factorial, Scalar};

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], sign: i8, out: &mut Vec<(Vec<usize>, i8)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), sign));
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            // inversions contributed by placing v after the current prefix
            let smaller_unused = (0..v).filter(|&u| !used[u]).count();
            let s = if smaller_unused % 2 == 0 { sign } else { -sign };
            used[v] = true;
            prefix.push(v);
            rec(prefix, used, s, out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], 1, &mut out);
    out
}

fn signed_add<S: Scalar>(acc: S, sign: i8, t: S) -> S {
    if sign > 0 {
        acc + t
    } else {
        acc - t
    }
}

/// Determinant by the Leibniz permutation expansion (`n × n`, row-major).
pub fn det_oracle<S: Scalar>(m: &[S], n: usize) -> S {
    assert_eq!(m.len(), n * n);
    permutations(n).into_iter().fold(S::zero(), |acc, (p, s)| {
        let t = (0..n).fold(S::one(), |t, i| t * m[i * n + p[i]].clone());
        signed_add(acc, s, t)
    })
}

fn submatrix<S: Scalar>(m: &[S], n: usize, rows: &[usize], cols: &[usize]) -> Vec<S> {
    rows.iter()
        .flat_map(|&r| cols.iter().map(move |&c| m[r * n + c].clone()))
        .collect()
}

/// Sum of all principal `k × k` minors.
pub fn minor_sum_oracle<S: Scalar>(m: &[S], n: usize, k: usize) -> S {
    subsets(n, k).fold(S::zero(), |acc, i| {
        let ix = i.indices();
        acc + det_oracle(&submatrix(m, n, &ix, &ix), k)
    })
}

/// Classical cofactor matrix `C_ij = (-1)^{i+j} det(M without row i, col j)`.
pub fn cofactor_matrix_oracle<S: Scalar>(m: &[S], n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let d = det_oracle(&submatrix(m, n, &rows, &cols), n - 1);
            out.push(if (i + j) % 2 == 0 { d } else { -d });
        }
    }
    out
}

/// Coordinates of `x_1 ∧ .. ∧ x_p` on the basis `e_I`: the `p × p` minors of
/// the coordinate matrix.
fn multivector<S: Scalar>(n: usize, xs: &[Vec<S>]) -> Vec<(MultiIndex, S)> {
    let p = xs.len();
    subsets(n, p)
        .map(|i| {
            let ix = i.indices();
            let m: Vec<S> = xs
                .iter()
                .flat_map(|x| ix.iter().map(move |&c| x[c].clone()))
                .collect();
            (i, det_oracle(&m, p))
        })
        .collect()
}

/// `ω(x_1 ∧ .. ∧ x_p, y_1 ∧ .. ∧ y_q)` for arbitrary coordinate vectors.
pub fn eval<S: Scalar>(w: &DoubleForm<S>, xs: &[Vec<S>], ys: &[Vec<S>]) -> Result<S> {
    if xs.len() != w.p() {
        return Err(Error::Arity { expected: w.p(), got: xs.len() });
    }
    if ys.len() != w.q() {
        return Err(Error::Arity { expected: w.q(), got: ys.len() });
    }
    let n = w.n();
    if let Some(bad) = xs.iter().chain(ys).find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(n, bad.len()));
    }
    let u = multivector(n, xs);
    let v = multivector(n, ys);
    let mut acc = S::zero();
    for (i, a) in &u {
        if a.is_zero() {
            continue;
        }
        for (j, b) in &v {
            if b.is_zero() {
                continue;
            }
            acc = acc + a.clone() * b.clone() * w.get(i, j).clone();
        }
    }
    Ok(acc)
}

/// The `i`-th standard basis vector of `R^n`.
pub fn basis_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    (0..n).map(|c| if c == i { S::one() } else { S::zero() }).collect()
}

fn basis_vectors<S: Scalar>(i: &MultiIndex) -> Vec<Vec<S>> {
    i.indices().into_iter().map(|c| basis_vector(i.n(), c)).collect()
}

/// Ordered splittings of `0..m` into a first block of size `a` and the rest,
/// with the sign of the shuffle.
fn shuffles(m: usize, a: usize) -> Vec<(Vec<usize>, Vec<usize>, i8)> {
    subsets(m, a)
        .map(|s| {
            let first = s.indices();
            let rest = s.complement().indices();
            let mut inv = 0usize;
            for &x in &first {
                inv += rest.iter().filter(|&&y| y < x).count();
            }
            (first, rest, if inv.is_multiple_of(2) { 1 } else { -1 })
        })
        .collect()
}

/// `(ω1 ω2)(x_1..x_{p1+p2}; y_1..y_{q1+q2})` as the signed shuffle sum of
/// `ω1(x_σ, y_τ) ω2(x_σ', y_τ')`.
pub fn wedge_oracle<S: Scalar>(
    w1: &DoubleForm<S>,
    w2: &DoubleForm<S>,
    xs: &[Vec<S>],
    ys: &[Vec<S>],
) -> Result<S> {
    if xs.len() != w1.p() + w2.p() {
        return Err(Error::Arity { expected: w1.p() + w2.p(), got: xs.len() });
    }
    if ys.len() != w1.q() + w2.q() {
        return Err(Error::Arity { expected: w1.q() + w2.q(), got: ys.len() });
    }
    let pick = |v: &[Vec<S>], ix: &[usize]| -> Vec<Vec<S>> { ix.iter().map(|&i| v[i].clone()).collect() };
    let mut acc = S::zero();
    for (xa, xb, sx) in shuffles(xs.len(), w1.p()) {
        for (ya, yb, sy) in shuffles(ys.len(), w1.q()) {
            let a = eval(w1, &pick(xs, &xa), &pick(ys, &ya))?;
            if a.is_zero() {
                continue;
            }
            let b = eval(w2, &pick(xs, &xb), &pick(ys, &yb))?;
            acc = signed_add(acc, sx * sy, a * b);
        }
    }
    Ok(acc)
}

/// The whole product `ω1 ω2` tabulated through [`wedge_oracle`] on basis tuples.
pub fn wedge_form_oracle<S: Scalar>(w1: &DoubleForm<S>, w2: &DoubleForm<S>) -> Result<DoubleForm<S>> {
    let n = w1.n();
    let mut err = None;
    let out = DoubleForm::from_fn(n, w1.p() + w2.p(), w1.q() + w2.q(), |i, j| {
        wedge_oracle(w1, w2, &basis_vectors(i), &basis_vectors(j)).unwrap_or_else(|e| {
            err = Some(e);
            S::zero()
        })
    })?;
    err.map_or(Ok(out), Err)
}

/// `cω(x; y) = Σ_j ω(e_j, x; e_j, y)` by evaluation.
pub fn contract_oracle<S: Scalar>(w: &DoubleForm<S>) -> Result<DoubleForm<S>> {
    let n = w.n();
    if w.p() == 0 || w.q() == 0 {
        return DoubleForm::zeros(n, w.p().saturating_sub(1), w.q().saturating_sub(1));
    }
    let mut err = None;
    let out = DoubleForm::from_fn(n, w.p() - 1, w.q() - 1, |i, j| {
        let mut acc = S::zero();
        for e in 0..n {
            let mut xs = vec![basis_vector(n, e)];
            xs.extend(basis_vectors(i));
            let mut ys = vec![basis_vector(n, e)];
            ys.extend(basis_vectors(j));
            match eval(w, &xs, &ys) {
                Ok(v) => acc = acc + v,
                Err(e) => err = Some(e),
            }
        }
        acc
    })?;
    err.map_or(Ok(out), Err)
}

/// Coefficients of `*e_A`: the `e_B` coefficient is the volume component of
/// `e_A ∧ e_B`, i.e. the determinant of the rows `(e_a.., e_b..)`.
fn star_basis<S: Scalar>(a: &MultiIndex) -> Vec<(MultiIndex, S)> {
    let n = a.n();
    subsets(n, n - a.len())
        .filter_map(|b| {
            let rows: Vec<usize> = a.indices().into_iter().chain(b.indices()).collect();
            let m: Vec<S> = rows
                .iter()
                .flat_map(|&r| (0..n).map(move |c| if c == r { S::one() } else { S::zero() }))
                .collect();
            let d = det_oracle(&m, n);
            (!d.is_zero()).then_some((b, d))
        })
        .collect()
}

/// `*ω(e_A, e_B) = (-1)^{(p+q)(n-p-q)} ω(*e_A, *e_B)`.
pub fn hodge_oracle<S: Scalar>(w: &DoubleForm<S>) -> Result<DoubleForm<S>> {
    let n = w.n();
    let (p, q) = (w.p(), w.q());
    let e = (p + q) * n.abs_diff(p + q);
    let rows: Vec<_> = subsets(n, n - p).map(|a| star_basis::<S>(&a)).collect();
    let cols: Vec<_> = subsets(n, n - q).map(|b| star_basis::<S>(&b)).collect();
    DoubleForm::from_fn(n, n - p, n - q, |a, b| {
        let mut acc = S::zero();
        for (i, x) in &rows[a.rank()] {
            for (j, y) in &cols[b.rank()] {
                acc = acc + x.clone() * y.clone() * w.get(i, j).clone();
            }
        }
        if e % 2 == 0 {
            acc
        } else {
            -acc
        }
    })
}

/// Pfaffian of a skew matrix as the signed sum over perfect matchings.
pub fn pfaffian_oracle<S: Scalar>(m: &[S], n: usize) -> S {
    fn rec<S: Scalar>(m: &[S], n: usize, free: Vec<usize>) -> S {
        if free.is_empty() {
            return S::one();
        }
        let first = free[0];
        let mut acc = S::zero();
        for pos in 1..free.len() {
            let partner = free[pos];
            let a = &m[first * n + partner];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = free.iter().copied().filter(|&v| v != first && v != partner).collect();
            // crossing sign of pairing `first` with the pos-th free element
            let t = a.clone() * rec(m, n, rest);
            acc = if pos % 2 == 1 { acc + t } else { acc - t };
        }
        acc
    }
    if n % 2 == 1 {
        return S::zero();
    }
    rec(m, n, (0..n).collect())
}

/// Hyperdeterminant of an `r`-slot `(1,..,1)` multiform:
/// `(1/n!) Σ_{σ1..σr} sgn(σ1)..sgn(σr) Π_i T(σ1(i), .., σr(i))`.
pub fn hyperdet_oracle<S: Scalar>(w: &MultiForm<S>) -> S {
    assert_eq!(w.slot_degree(), 1, "classical hypermatrix");
    let n = w.n();
    let r = w.slots();
    let perms = permutations(n);
    let mut acc = S::zero();
    let mut choice = vec![0usize; r];
    'outer: loop {
        let mut sign = 1i8;
        for &c in &choice {
            sign *= perms[c].1;
        }
        let mut t = S::one();
        for i in 0..n {
            let idx: Vec<MultiIndex> = choice
                .iter()
                .map(|&c| MultiIndex::new(n, &[perms[c].0[i]]).unwrap())
                .collect();
            t = t * w.get(&idx).clone();
            if t.is_zero() {
                break;
            }
        }
        acc = signed_add(acc, sign, t);
        for slot in (0..r).rev() {
            choice[slot] += 1;
            if choice[slot] < perms.len() {
                continue 'outer;
            }
            choice[slot] = 0;
        }
        break;
    }
    acc / factorial::<S>(n)
}

/// Pfaffian-type value of an exterior form evaluated directly:
/// `*(ω^q)/q!` via the antisymmetrized sum over ordered splittings of `0..n`
/// into `q` consecutive blocks.
pub fn form_pfaffian_oracle<S: Scalar>(w: &ExteriorForm<S>) -> S {
    let n = w.n();
    let k = w.degree();
    if k == 0 || !n.is_multiple_of(k) {
        return S::zero();
    }
    let q = n / k;
    let mut acc = S::zero();
    for (perm, sign) in permutations(n) {
        let mut t = S::one();
        for block in perm.chunks(k) {
            let mut sorted = block.to_vec();
            sorted.sort_unstable();
            // sign of sorting the block
            let mut inv = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if block[a] > block[b] {
                        inv += 1;
                    }
                }
            }
            let v = w.get(&MultiIndex::new(n, &sorted).unwrap()).clone();
            t = t * if inv % 2 == 0 { v } else { -v };
            if t.is_zero() {
                break;
            }
        }
        acc = signed_add(acc, sign, t);
    }
    // every ordered block decomposition appears (k!)^q times
    acc / (factorial::<S>(q) * crate::scalar::powi(&factorial::<S>(k), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn mat(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn permutation_signs() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().map(|p| p.1 as i32).sum::<i32>(), 0);
        assert_eq!(ps[1], (vec![0, 2, 1], -1));
        assert_eq!(ps[3], (vec![1, 2, 0], 1));
    }

    #[test]
    fn det_and_minors() {
        for n in 0..=4 {
            let id: Vec<Rational> =
                (0..n * n).map(|i| if i / n == i % n { r(1) } else { r(0) }).collect();
            assert_eq!(det_oracle(&id, n), r(1));
            for k in 0..=n {
                assert_eq!(minor_sum_oracle(&id, n, k), r(crate::scalar::binomial(n, k) as i64));
            }
        }
        let m = mat(&[2, -1, 3, 0, 1, 4, 5, 2, -2]);
        assert_eq!(minor_sum_oracle(&m, 3, 1), r(1));
        assert_eq!(det_oracle(&m, 3), crate::linalg::det(&m, 3));
    }

    #[test]
    fn cofactors() {
        let m = mat(&[1, 2, 3, 4]);
        assert_eq!(cofactor_matrix_oracle(&m, 2), mat(&[4, -3, -2, 1]));
    }

    #[test]
    fn eval_examples() {
        let n = 3;
        let g = DoubleForm::<Rational>::metric(n);
        for i in 0..n {
            for j in 0..n {
                let v = eval(&g, &[basis_vector(n, i)], &[basis_vector(n, j)]).unwrap();
                assert_eq!(v, if i == j { r(1) } else { r(0) });
            }
        }
        let g2 = DoubleForm::<Rational>::metric_power(n, 2).unwrap();
        let xs = vec![basis_vector(n, 0), basis_vector(n, 1)];
        assert_eq!(eval(&g2, &xs, &xs).unwrap(), r(2));
        // linear in each vector
        let h = DoubleForm::bilinear(&[mat(&[1, 2, 0]), mat(&[0, 3, 1]), mat(&[2, 0, 1])]).unwrap();
        let x = mat(&[1, -1, 2]);
        let y = mat(&[0, 2, 1]);
        let x3: Vec<Rational> = x.iter().map(|v| v.clone() * r(3)).collect();
        assert_eq!(
            eval(&h, &[x3], std::slice::from_ref(&y)).unwrap(),
            eval(&h, &[x], &[y]).unwrap() * r(3)
        );
        assert!(eval(&h, &[], &[]).is_err());
    }

    #[test]
    fn wedge_oracle_examples() {
        let n = 2;
        let g = DoubleForm::<Rational>::metric(n);
        let xs = vec![basis_vector(n, 0), basis_vector(n, 1)];
        assert_eq!(wedge_oracle(&g, &g, &xs, &xs).unwrap(), r(2));
        let z = DoubleForm::<Rational>::zeros(n, 1, 1).unwrap();
        assert_eq!(wedge_oracle(&g, &z, &xs, &xs).unwrap(), r(0));
    }

    #[test]
    fn pfaffian_oracle_examples() {
        assert_eq!(pfaffian_oracle(&mat(&[0, 5, -5, 0]), 2), r(5));
        // standard symplectic form on R^4: e01 + e23
        let j = mat(&[0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0]);
        assert_eq!(pfaffian_oracle(&j, 4), r(1));
        assert_eq!(det_oracle(&j, 4), r(1));
    }
}
