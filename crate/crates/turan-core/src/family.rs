//! Dense edge-membership bitsets over all C(n,3) triples.

use std::io::{BufRead, Write};

use crate::binom::triple_count;
use crate::error::TuranError;
use crate::ksubset::KSubset;
use crate::triple::{rank3, unrank3, UniformTriple, VertexSetSize};

/// A 3-uniform hypergraph on 0..n-1, stored as one bit per triple rank.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleFamily {
    n: VertexSetSize,
    words: Vec<u64>,
    edge_count: usize,
}

impl std::fmt::Debug for TripleFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TripleFamily")
            .field("n", &self.n.get())
            .field("edge_count", &self.edge_count)
            .finish()
    }
}

impl TripleFamily {
    pub fn empty(n: VertexSetSize) -> Self {
        let bits = triple_count(n.get());
        Self {
            n,
            words: vec![0; bits.div_ceil(64)],
            edge_count: 0,
        }
    }

    pub fn full(n: VertexSetSize) -> Self {
        let mut f = Self::empty(n);
        for r in 0..f.triple_capacity() {
            f.set_rank(r);
        }
        f
    }

    pub fn from_triples<I>(n: VertexSetSize, triples: I) -> Result<Self, TuranError>
    where
        I: IntoIterator<Item = UniformTriple>,
    {
        let mut f = Self::empty(n);
        for t in triples {
            f.insert(t)?;
        }
        Ok(f)
    }

    pub fn n(&self) -> VertexSetSize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// C(n,3): the number of addressable triples.
    pub fn triple_capacity(&self) -> usize {
        triple_count(self.n.get())
    }

    #[inline]
    pub fn contains_rank(&self, rank: usize) -> bool {
        debug_assert!(rank < self.triple_capacity());
        self.words[rank / 64] >> (rank % 64) & 1 == 1
    }

    pub fn contains(&self, t: UniformTriple) -> bool {
        assert!(
            t.c() < self.n.get(),
            "triple {t:?} out of range for n = {}",
            self.n.get()
        );
        self.contains_rank(rank3(t.a(), t.b(), t.c()))
    }

    /// Adds an edge; Ok(false) when it was already present.
    pub fn insert(&mut self, t: UniformTriple) -> Result<bool, TuranError> {
        let rank = crate::triple::rank_triple(t, self.n)?;
        if self.contains_rank(rank) {
            return Ok(false);
        }
        self.set_rank(rank);
        Ok(true)
    }

    /// Removes an edge; Ok(false) when it was not present.
    pub fn remove(&mut self, t: UniformTriple) -> Result<bool, TuranError> {
        let rank = crate::triple::rank_triple(t, self.n)?;
        if !self.contains_rank(rank) {
            return Ok(false);
        }
        self.words[rank / 64] &= !(1u64 << (rank % 64));
        self.edge_count -= 1;
        Ok(true)
    }

    pub(crate) fn set_rank(&mut self, rank: usize) {
        debug_assert!(!self.contains_rank(rank));
        self.words[rank / 64] |= 1u64 << (rank % 64);
        self.edge_count += 1;
    }

    /// The family of exactly the triples this one lacks.
    pub fn complement(&self) -> Self {
        let bits = self.triple_capacity();
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = bits % 64;
        if tail != 0 {
            *words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
        Self {
            n: self.n,
            words,
            edge_count: bits - self.edge_count,
        }
    }

    /// Set ranks in increasing order.
    pub fn iter_ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// Edges in increasing rank order.
    pub fn iter_edges(&self) -> impl Iterator<Item = UniformTriple> + '_ {
        let n = self.n.get();
        self.iter_ranks().map(move |r| unrank3(r, n))
    }

    /// Number of member triples lying entirely inside s.
    pub fn count_edges_within(&self, s: &KSubset) -> usize {
        let v = s.vertices();
        assert!(*v.last().unwrap() < self.n.get());
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                for l in j + 1..v.len() {
                    if self.contains_rank(rank3(v[i], v[j], v[l])) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Writes the text format: "n m" then one "a b c" line per edge in rank
    /// order, each line newline-terminated.
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n.get(), self.edge_count)?;
        for t in self.iter_edges() {
            writeln!(w, "{} {} {}", t.a(), t.b(), t.c())?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("text format is ASCII")
    }

    /// Parses the text format, rejecting duplicate, non-canonical,
    /// out-of-order, or out-of-range triples and any trailing content.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self, TuranError> {
        let fmt = |line: usize, reason: String| TuranError::Format { line, reason };
        let mut lines = r.lines().enumerate();

        let (_, header) = lines
            .next()
            .ok_or_else(|| fmt(1, "empty input, expected \"n m\" header".into()))?;
        let header = header?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fmt(1, format!("bad header {header:?}, expected \"n m\"")))?;
        let m: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fmt(1, format!("bad header {header:?}, expected \"n m\"")))?;
        if parts.next().is_some() {
            return Err(fmt(1, format!("trailing tokens in header {header:?}")));
        }
        let size = VertexSetSize::new(n)?;
        if m > triple_count(n) {
            return Err(fmt(
                1,
                format!("m = {m} exceeds C({n},3) = {}", triple_count(n)),
            ));
        }

        let mut family = Self::empty(size);
        let mut prev_rank: Option<usize> = None;
        for _ in 0..m {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| fmt(m + 1, format!("expected {m} edge lines, input ended early")))?;
            let lineno = idx + 1;
            let line = line?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(fmt(lineno, format!("expected \"a b c\", got {line:?}")));
            }
            let mut v = [0usize; 3];
            for (slot, field) in v.iter_mut().zip(&fields) {
                *slot = field
                    .parse()
                    .map_err(|_| fmt(lineno, format!("bad vertex {field:?}")))?;
            }
            let [a, b, c] = v;
            if !(a < b && b < c && c < n) {
                return Err(fmt(
                    lineno,
                    format!("triple {a} {b} {c} not canonical for n = {n}: need a < b < c < n"),
                ));
            }
            let rank = rank3(a, b, c);
            if prev_rank.is_some_and(|p| p >= rank) {
                return Err(fmt(
                    lineno,
                    format!("triple {a} {b} {c} duplicate or out of rank order"),
                ));
            }
            prev_rank = Some(rank);
            family.set_rank(rank);
        }
        for (idx, line) in lines {
            let line = line?;
            if !line.trim().is_empty() {
                return Err(fmt(
                    idx + 1,
                    format!("trailing content {line:?} after {m} edges"),
                ));
            }
        }
        Ok(family)
    }

    pub fn from_text(s: &str) -> Result<Self, TuranError> {
        Self::read_text(s.as_bytes())
    }
}
