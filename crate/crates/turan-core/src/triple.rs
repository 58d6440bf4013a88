//! Canonical vertex triples and their colex ranking.

use crate::binom::{choose, triple_count, MAX_VERTICES};
use crate::error::TuranError;

/// Number of vertices n; vertices are 0..n-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSetSize(usize);

impl VertexSetSize {
    /// Smallest vertex set that can carry a triple.
    pub const MIN: usize = 3;

    pub fn new(n: usize) -> Result<Self, TuranError> {
        if !(Self::MIN..=MAX_VERTICES).contains(&n) {
            return Err(TuranError::VertexCount {
                n,
                min: Self::MIN,
                max: MAX_VERTICES,
            });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// A 3-element edge {a, b, c} stored with a < b < c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniformTriple {
    a: usize,
    b: usize,
    c: usize,
}

impl UniformTriple {
    /// Requires a < b < c; vertex range against n is checked by the
    /// operations that take a vertex set.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self, TuranError> {
        if a < b && b < c {
            Ok(Self { a, b, c })
        } else {
            Err(TuranError::InvalidTriple { a, b, c, n: 0 })
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn c(self) -> usize {
        self.c
    }

    pub fn vertices(self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }
}

/// Colex rank of a canonical triple: C(c,3) + C(b,2) + C(a,1).
///
/// Bijective onto 0..C(n,3); constant-time via the binomial table.
pub fn rank_triple(t: UniformTriple, n: VertexSetSize) -> Result<usize, TuranError> {
    if t.c >= n.get() {
        return Err(TuranError::InvalidTriple {
            a: t.a,
            b: t.b,
            c: t.c,
            n: n.get(),
        });
    }
    Ok(rank3(t.a, t.b, t.c))
}

/// Rank without the range check; callers guarantee a < b < c < n.
#[inline]
pub(crate) fn rank3(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c && c <= MAX_VERTICES);
    choose(c, 3) as usize + choose(b, 2) as usize + a
}

/// Inverse of [`rank_triple`].
pub fn unrank_triple(r: usize, n: VertexSetSize) -> Result<UniformTriple, TuranError> {
    let count = triple_count(n.get());
    if r >= count {
        return Err(TuranError::RankOutOfRange { rank: r, count });
    }
    Ok(unrank3(r, n.get()))
}

pub(crate) fn unrank3(r: usize, n: usize) -> UniformTriple {
    debug_assert!(r < triple_count(n));
    let mut rem = r as u128;
    let mut c = n - 1;
    while choose(c, 3) > rem {
        c -= 1;
    }
    rem -= choose(c, 3);
    let mut b = c - 1;
    while choose(b, 2) > rem {
        b -= 1;
    }
    rem -= choose(b, 2);
    let a = rem as usize;
    UniformTriple { a, b, c }
}

/// Advances (a, b, c) to the next triple in colex order; callers stop at
/// C(n,3) steps. Constant-time companion to unrank for chunked scans.
#[inline]
pub(crate) fn next_colex(t: &mut UniformTriple) {
    if t.a + 1 < t.b {
        t.a += 1;
    } else if t.b + 1 < t.c {
        t.a = 0;
        t.b += 1;
    } else {
        t.a = 0;
        t.b = 1;
        t.c += 1;
    }
}
