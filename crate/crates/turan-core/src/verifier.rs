//! Exhaustive k-subset scanning for the (3,k)-Turán property.
//!
//! A family satisfies the property when every k-subset of vertices contains
//! strictly fewer than C(k,3) member triples. The scan walks k-subsets in
//! lexicographic order; advancing to the next subset replaces a suffix of
//! positions, and the inside-edge count is updated incrementally by probing
//! the C(k-1,2) triples each removed or added vertex forms with the rest.

use serde::Serialize;

use crate::binom::choose;
use crate::error::TuranError;
use crate::exec;
use crate::family::TripleFamily;
use crate::ksubset::{first_subset, unrank_lex, KSubset};
use crate::triple::rank3;

/// At most this many subsets are scanned unless the caller raises the budget.
pub const DEFAULT_SCAN_BUDGET: u64 = 100_000_000;

const SCAN_CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Stop at the first violating subset instead of computing the exact
    /// maximum; the scan then runs sequentially in lex order, so the witness
    /// is still the lexicographically least violator.
    pub witness_only: bool,
    /// Upper bound on C(n,k); larger scan spaces are refused up front.
    pub budget: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            witness_only: false,
            budget: DEFAULT_SCAN_BUDGET,
        }
    }
}

/// Outcome of a property scan.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub holds: bool,
    /// A complete k-set, present exactly when the property fails; always the
    /// lexicographically least one.
    pub witness: Option<KSubset>,
    /// Largest inside-edge count seen before the scan stopped.
    pub max_inside: usize,
    pub subsets_scanned: u64,
}

fn check_scan_args(f: &TripleFamily, k: usize, budget: u64) -> Result<u64, TuranError> {
    let n = f.n().get();
    if !(3 < k && k <= n) {
        return Err(TuranError::InvalidArity {
            k,
            op: "property scan",
            need: "3 < k <= n",
        });
    }
    let total = choose(n, k);
    if total > budget as u128 {
        return Err(TuranError::BudgetExceeded {
            what: "k-subset scan",
            required: total,
            budget,
        });
    }
    Ok(total as u64)
}

/// Member triples formed by v (as the largest vertex) with pairs from `set`,
/// all of whose elements are below v.
#[inline]
fn pairs_with_top(f: &TripleFamily, set: &[usize], v: usize) -> usize {
    debug_assert!(set.iter().all(|&u| u < v));
    let mut count = 0;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if f.contains_rank(rank3(set[i], set[j], v)) {
                count += 1;
            }
        }
    }
    count
}

fn count_within_slice(f: &TripleFamily, sub: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..sub.len() {
        for j in i + 1..sub.len() {
            for l in j + 1..sub.len() {
                if f.contains_rank(rank3(sub[i], sub[j], sub[l])) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Advances `sub` to the next lex subset, updating `count` incrementally.
/// The suffix that changes is torn down from the right (each popped vertex
/// is the current maximum) and rebuilt ascending (each push is a new
/// maximum), so every adjustment is a pairs_with_top probe.
fn advance_with_count(f: &TripleFamily, sub: &mut Vec<usize>, count: &mut usize, n: usize) -> bool {
    let k = sub.len();
    let mut pivot = k;
    for i in (0..k).rev() {
        if sub[i] < n - k + i {
            pivot = i;
            break;
        }
    }
    if pivot == k {
        return false;
    }
    let restart = sub[pivot] + 1;
    while sub.len() > pivot {
        let v = sub.pop().unwrap();
        *count -= pairs_with_top(f, sub, v);
    }
    for v in restart..restart + (k - pivot) {
        *count += pairs_with_top(f, sub, v);
        sub.push(v);
    }
    true
}

struct ChunkScan {
    max: usize,
    /// First subset in the chunk attaining `max`.
    argmax: Vec<usize>,
}

fn scan_chunk(f: &TripleFamily, k: usize, range: std::ops::Range<u64>) -> ChunkScan {
    let n = f.n().get();
    let mut sub = unrank_lex(range.start, n, k);
    let mut count = count_within_slice(f, &sub);
    let mut best = ChunkScan {
        max: count,
        argmax: sub.clone(),
    };
    for _ in range.start + 1..range.end {
        let advanced = advance_with_count(f, &mut sub, &mut count, n);
        debug_assert!(advanced);
        if count > best.max {
            best.max = count;
            best.argmax.clear();
            best.argmax.extend_from_slice(&sub);
        }
    }
    best
}

fn full_scan(f: &TripleFamily, k: usize, total: u64) -> (usize, Vec<usize>, u64) {
    let chunks = exec::map_chunks(total, SCAN_CHUNK, |range| scan_chunk(f, k, range));
    let mut best: Option<ChunkScan> = None;
    for chunk in chunks {
        // Strict comparison keeps the earliest chunk on ties, which together
        // with first-attaining inside each chunk yields the lex-least argmax.
        match &best {
            Some(b) if chunk.max <= b.max => {}
            _ => best = Some(chunk),
        }
    }
    let best = best.expect("scan space is nonempty since k <= n");
    (best.max, best.argmax, total)
}

fn witness_scan(f: &TripleFamily, k: usize, total: u64) -> (usize, Option<Vec<usize>>, u64) {
    let n = f.n().get();
    let cap = choose(k, 3) as usize;
    let mut sub = first_subset(k);
    let mut count = count_within_slice(f, &sub);
    let mut scanned = 1;
    let mut max = count;
    loop {
        if count >= cap {
            return (max, Some(sub), scanned);
        }
        if scanned == total || !advance_with_count(f, &mut sub, &mut count, n) {
            return (max, None, scanned);
        }
        scanned += 1;
        if count > max {
            max = count;
        }
    }
}

/// Decides the property with default options (full scan, default budget).
pub fn is_turan_property(f: &TripleFamily, k: usize) -> Result<VerifyReport, TuranError> {
    is_turan_property_with(f, k, ScanOptions::default())
}

pub fn is_turan_property_with(
    f: &TripleFamily,
    k: usize,
    opts: ScanOptions,
) -> Result<VerifyReport, TuranError> {
    let total = check_scan_args(f, k, opts.budget)?;
    let cap = choose(k, 3) as usize;
    if opts.witness_only {
        let (max_inside, witness, subsets_scanned) = witness_scan(f, k, total);
        return Ok(VerifyReport {
            holds: witness.is_none(),
            witness: witness.map(KSubset::from_sorted),
            max_inside,
            subsets_scanned,
        });
    }
    let (max_inside, argmax, subsets_scanned) = full_scan(f, k, total);
    let holds = max_inside < cap;
    Ok(VerifyReport {
        holds,
        witness: (!holds).then(|| KSubset::from_sorted(argmax)),
        max_inside,
        subsets_scanned,
    })
}

/// Exact maximum inside-edge count and its lexicographically least argmax.
pub fn max_edges_in_any_ksubset(
    f: &TripleFamily,
    k: usize,
) -> Result<(usize, KSubset), TuranError> {
    let total = check_scan_args(f, k, DEFAULT_SCAN_BUDGET)?;
    let (max, argmax, _) = full_scan(f, k, total);
    Ok((max, KSubset::from_sorted(argmax)))
}
