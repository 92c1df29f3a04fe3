//! Lexicographically ordered k-subsets of `{0, .., n-1}`.
//!
//! A [`MultiIndex`] addresses the basis p-vector `e_{i1} ∧ .. ∧ e_{ip}` with
//! `i1 < .. < ip`. Ranks are 0-based positions in lexicographic order, which is
//! the canonical row/column order of every dense tensor in this crate.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::binomial;

/// Largest supported ambient dimension (subsets are stored as `u64` masks).
pub const MAX_DIM: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    n: u8,
    bits: u64,
}

impl MultiIndex {
    /// Builds a multi-index from strictly ascending indices in `[0, n)`.
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        let mut bits = 0u64;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= n || prev.is_some_and(|p| p >= i) {
                return Err(Error::InvalidMultiIndex {
                    n,
                    indices: indices.to_vec(),
                });
            }
            bits |= 1 << i;
            prev = Some(i);
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn empty(n: usize) -> Self {
        Self { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n: n as u8,
            bits: full_mask(n),
        }
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        Self { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits & (1 << i) != 0
    }

    pub fn indices(&self) -> Vec<usize> {
        mask_indices(self.bits).collect()
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            bits: full_mask(self.n()) & !self.bits,
        }
    }

    /// Lexicographic rank among the `C(n, len)` subsets of the same size.
    pub fn rank(&self) -> usize {
        rank_mask(self.n(), self.bits)
    }

    /// Inverse of [`MultiIndex::rank`].
    pub fn unrank(r: usize, k: usize, n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        if k > n {
            return Err(Error::DegreeOutOfRange {
                what: "subset size",
                value: k,
                max: n,
            });
        }
        let total = binomial(n, k) as usize;
        if r >= total {
            return Err(Error::RankOutOfRange { rank: r, k, n });
        }
        Ok(Self::from_bits(n, unrank_mask(r, k, n)))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// Sign of `e_I ∧ e_J` relative to `e_{I ∪ J}`, or `None` when the wedge
/// vanishes because `I` and `J` overlap.
pub fn merge_sign(i: &MultiIndex, j: &MultiIndex) -> Option<(i8, MultiIndex)> {
    let s = mask_merge_sign(i.bits, j.bits)?;
    Some((s, MultiIndex::from_bits(i.n(), i.bits | j.bits)))
}

/// `ε_I` with `*e_I = ε_I e_{I^c}`: parity of the permutation `(I, I^c)`.
pub fn complement_sign(i: &MultiIndex) -> i8 {
    let c = full_mask(i.n()) & !i.bits;
    mask_merge_sign(i.bits, c).expect("complement is disjoint")
}

/// Iterator over all k-subsets of `[0, n)` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = MultiIndex> {
    let total = binomial(n, k) as usize;
    (0..total).map(move |r| MultiIndex::from_bits(n, unrank_mask(r, k, n)))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_indices(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

pub(crate) fn mask_merge_sign(a: u64, b: u64) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    // count inversions: pairs (x in a, y in b) with x > y
    let mut inv = 0u32;
    for y in mask_indices(b) {
        let above = if y >= 63 { 0 } else { !((1u64 << (y + 1)) - 1) };
        inv += (a & above).count_ones();
    }
    Some(if inv.is_multiple_of(2) { 1 } else { -1 })
}

pub(crate) fn rank_mask(n: usize, bits: u64) -> usize {
    let k = bits.count_ones() as usize;
    let total = binomial(n, k) as usize;
    let mut acc = 0usize;
    for (pos, c) in mask_indices(bits).enumerate() {
        acc += binomial(n - 1 - c, k - pos) as usize;
    }
    total - 1 - acc
}

pub(crate) fn unrank_mask(mut r: usize, k: usize, n: usize) -> u64 {
    let mut bits = 0u64;
    let mut need = k;
    let mut i = 0usize;
    while need > 0 {
        // subsets whose next element is i
        let block = binomial(n - 1 - i, need - 1) as usize;
        if r < block {
            bits |= 1 << i;
            need -= 1;
        } else {
            r -= block;
        }
        i += 1;
    }
    bits
}

/// Lex-ordered masks of all k-subsets, as a table.
pub(crate) fn subset_masks(n: usize, k: usize) -> Vec<u64> {
    let total = binomial(n, k) as usize;
    (0..total).map(|r| unrank_mask(r, k, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(n: usize, ix: &[usize]) -> MultiIndex {
        MultiIndex::new(n, ix).unwrap()
    }

    /// Parity of an arbitrary permutation of `0..len` by counting inversions.
    fn perm_parity(p: &[usize]) -> i8 {
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(MultiIndex::unrank(0, 2, 4).unwrap().indices(), vec![0, 1]);
        assert_eq!(mi(4, &[2, 3]).rank(), 5);
        assert_eq!(mi(4, &[0, 2]).rank(), 1);
    }

    #[test]
    fn rank_unrank_bijection() {
        for n in 0..=9 {
            for k in 0..=n {
                let all: Vec<_> = subsets(n, k).collect();
                assert_eq!(all.len() as u64, binomial(n, k));
                for (r, s) in all.iter().enumerate() {
                    assert_eq!(s.rank(), r);
                    assert_eq!(s.len(), k);
                }
                // lexicographic order
                for w in all.windows(2) {
                    assert!(w[0].indices() < w[1].indices());
                }
            }
        }
    }

    #[test]
    fn rank_errors() {
        assert!(MultiIndex::unrank(6, 2, 4).is_err());
        assert!(MultiIndex::unrank(0, 5, 4).is_err());
        assert!(MultiIndex::new(4, &[1, 1]).is_err());
        assert!(MultiIndex::new(4, &[2, 1]).is_err());
        assert!(MultiIndex::new(4, &[4]).is_err());
        assert!(MultiIndex::new(65, &[]).is_err());
    }

    #[test]
    fn merge_sign_examples() {
        let (s, u) = merge_sign(&mi(2, &[0]), &mi(2, &[1])).unwrap();
        assert_eq!((s, u.indices()), (1, vec![0, 1]));
        let (s, u) = merge_sign(&mi(2, &[1]), &mi(2, &[0])).unwrap();
        assert_eq!((s, u.indices()), (-1, vec![0, 1]));
        assert!(merge_sign(&mi(2, &[0]), &mi(2, &[0])).is_none());
    }

    #[test]
    fn merge_sign_matches_sorting_parity() {
        for n in 0..=6 {
            for a in 0..(1u64 << n) {
                for b in 0..(1u64 << n) {
                    if a & b != 0 {
                        continue;
                    }
                    let mut concat: Vec<usize> = mask_indices(a).chain(mask_indices(b)).collect();
                    let mut sorted = concat.clone();
                    sorted.sort();
                    for v in concat.iter_mut() {
                        *v = sorted.iter().position(|x| x == v).unwrap();
                    }
                    assert_eq!(mask_merge_sign(a, b), Some(perm_parity(&concat)));
                }
            }
        }
    }

    #[test]
    fn complement_sign_examples() {
        assert_eq!(complement_sign(&mi(2, &[0])), 1);
        assert_eq!(complement_sign(&mi(2, &[1])), -1);
        // (1,3,0,2): inversions (1,0),(3,0),(3,2) -> odd
        assert_eq!(complement_sign(&mi(4, &[1, 3])), perm_parity(&[1, 3, 0, 2]));
        assert_eq!(complement_sign(&mi(4, &[1, 3])), -1);
    }

    #[test]
    fn merge_sign_associativity_exhaustive() {
        for n in 0..=6usize {
            let m = 1u64 << n;
            for a in 0..m {
                for b in 0..m {
                    if a & b != 0 {
                        continue;
                    }
                    for c in 0..m {
                        if (a | b) & c != 0 {
                            continue;
                        }
                        let lhs = mask_merge_sign(a, b).unwrap() * mask_merge_sign(a | b, c).unwrap();
                        let rhs = mask_merge_sign(b, c).unwrap() * mask_merge_sign(a, b | c).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn complement_sign_product_exhaustive() {
        for n in 0..=6usize {
            for k in 0..=n {
                for i in subsets(n, k) {
                    let expected = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(complement_sign(&i) * complement_sign(&i.complement()), expected);
                }
            }
        }
    }
}
