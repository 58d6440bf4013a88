//! k-element vertex subsets and their lexicographic enumeration.

use crate::binom::choose;
use crate::error::TuranError;
use crate::triple::VertexSetSize;

/// A strictly increasing k-subset of 0..n-1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    vertices: Vec<usize>,
}

impl serde::Serialize for KSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

impl KSubset {
    pub fn new(vertices: Vec<usize>, n: VertexSetSize) -> Result<Self, TuranError> {
        let ok = !vertices.is_empty()
            && vertices.windows(2).all(|w| w[0] < w[1])
            && *vertices.last().unwrap() < n.get();
        if !ok {
            return Err(TuranError::InvalidKSubset {
                vertices,
                n: n.get(),
            });
        }
        Ok(Self { vertices })
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }
}

/// Total number of k-subsets, exact.
pub fn ksubset_count(n: usize, k: usize) -> u128 {
    choose(n, k)
}

/// All k-subsets of 0..n-1 in lexicographic order.
///
/// Callers guarantee 3 < k <= n; violations are programming errors.
pub fn ksubsets(n: VertexSetSize, k: usize) -> LexKSubsets {
    assert!(
        3 < k && k <= n.get(),
        "need 3 < k <= n, got k={k} n={}",
        n.get()
    );
    LexKSubsets {
        n: n.get(),
        state: Some(first_subset(k)),
    }
}

pub struct LexKSubsets {
    n: usize,
    state: Option<Vec<usize>>,
}

impl Iterator for LexKSubsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        let current = self.state.as_ref()?.clone();
        let done = {
            let s = self.state.as_mut().unwrap();
            !advance_lex(s, self.n)
        };
        if done {
            self.state = None;
        }
        Some(KSubset::from_sorted(current))
    }
}

pub(crate) fn first_subset(k: usize) -> Vec<usize> {
    (0..k).collect()
}

/// Steps a sorted subset to its lexicographic successor in place.
/// Returns false when the input was already the last subset.
pub(crate) fn advance_lex(sub: &mut [usize], n: usize) -> bool {
    let k = sub.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if sub[i] < n - k + i {
            let start = sub[i] + 1;
            for (slot, v) in sub.iter_mut().skip(i).zip(start..) {
                *slot = v;
            }
            return true;
        }
    }
    false
}

/// Subset at a given lex rank, by the combinadic decomposition.
pub(crate) fn unrank_lex(rank: u64, n: usize, k: usize) -> Vec<usize> {
    debug_assert!((rank as u128) < choose(n, k));
    let mut sub = Vec::with_capacity(k);
    let mut rem = rank as u128;
    let mut v = 0usize;
    for i in 0..k {
        loop {
            let with_v = choose(n - 1 - v, k - 1 - i);
            if rem < with_v {
                sub.push(v);
                v += 1;
                break;
            }
            rem -= with_v;
            v += 1;
        }
    }
    sub
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize) -> VertexSetSize {
        VertexSetSize::new(n).unwrap()
    }

    #[test]
    fn counts_match_binomials() {
        assert_eq!(ksubsets(vs(4), 4).count(), 1);
        assert_eq!(ksubsets(vs(5), 4).count(), 5);
        // C(9,4) from the binomial routine, per the enumeration contract.
        assert_eq!(ksubsets(vs(9), 4).count() as u128, ksubset_count(9, 4));
        assert_eq!(ksubset_count(9, 4), 126);
    }

    #[test]
    fn lex_order_and_distinctness() {
        for (n, k) in [(5, 4), (7, 4), (8, 5), (10, 6)] {
            let subs: Vec<KSubset> = ksubsets(vs(n), k).collect();
            assert_eq!(subs.len() as u128, ksubset_count(n, k));
            for w in subs.windows(2) {
                assert!(w[0] < w[1], "not strictly lex-increasing: {w:?}");
            }
            for s in &subs {
                assert_eq!(s.k(), k);
                assert!(s.vertices().windows(2).all(|w| w[0] < w[1]));
                assert!(*s.vertices().last().unwrap() < n);
            }
        }
    }

    #[test]
    fn unrank_agrees_with_iteration() {
        for (n, k) in [(6, 4), (9, 4), (8, 5)] {
            for (r, s) in ksubsets(vs(n), k).enumerate() {
                assert_eq!(unrank_lex(r as u64, n, k), s.vertices());
            }
        }
    }

    #[test]
    fn subset_validation() {
        assert!(KSubset::new(vec![0, 1, 2, 4], vs(5)).is_ok());
        assert!(KSubset::new(vec![0, 1, 1, 4], vs(5)).is_err());
        assert!(KSubset::new(vec![0, 1, 2, 5], vs(5)).is_err());
        assert!(KSubset::new(vec![], vs(5)).is_err());
    }

    #[test]
    #[should_panic(expected = "need 3 < k <= n")]
    fn ksubsets_rejects_small_k() {
        let _ = ksubsets(vs(5), 3);
    }
}
