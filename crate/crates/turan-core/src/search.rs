//! Exact maximum-size property-satisfying families by pruned search.
//!
//! Depth-first over triples in rank order, include branch first, with
//! per-k-subset inside-edge counters so a branch that would complete some
//! k-set is cut immediately, plus the bound current + remaining <= best.
//! The search runs sequentially; node counts and witnesses are therefore
//! exactly reproducible run to run.

use std::time::{Duration, Instant};

use crate::binom::{choose, triple_count};
use crate::construction::{build_turan, BuildMode};
use crate::error::TuranError;
use crate::family::TripleFamily;
use crate::ksubset::{ksubset_count, ksubsets};
use crate::triple::{rank3, VertexSetSize};
use crate::verifier;

/// Default cap on explored search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Outcome of an exact search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    /// Largest edge count found; exact when `complete`, otherwise a lower
    /// bound reached before the node budget ran out.
    pub max_edges: usize,
    pub witness: TripleFamily,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub complete: bool,
}

struct SearchState<'a> {
    triple_to_ks: &'a [Vec<u32>],
    k_cap: u32,
    counts: Vec<u32>,
    chosen: Vec<usize>,
    total: usize,
    best: usize,
    best_ranks: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl SearchState<'_> {
    /// Returns true if including `rank` keeps every k-subset short of its
    /// cap, leaving the counters incremented; otherwise rolls back.
    fn try_include(&mut self, rank: usize) -> bool {
        let ks = &self.triple_to_ks[rank];
        for (i, &ki) in ks.iter().enumerate() {
            self.counts[ki as usize] += 1;
            if self.counts[ki as usize] == self.k_cap {
                for &kj in &ks[..=i] {
                    self.counts[kj as usize] -= 1;
                }
                return false;
            }
        }
        true
    }

    fn undo_include(&mut self, rank: usize) {
        for &ki in &self.triple_to_ks[rank] {
            self.counts[ki as usize] -= 1;
        }
    }

    fn dfs(&mut self, idx: usize, skip_include: bool) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.chosen.len() + (self.total - idx) <= self.best {
            return;
        }
        if idx == self.total {
            return;
        }
        if !skip_include && self.try_include(idx) {
            self.chosen.push(idx);
            if self.chosen.len() > self.best {
                self.best = self.chosen.len();
                self.best_ranks.clear();
                self.best_ranks.extend_from_slice(&self.chosen);
            }
            self.dfs(idx + 1, false);
            self.chosen.pop();
            self.undo_include(idx);
            if self.exhausted {
                return;
            }
        }
        self.dfs(idx + 1, false);
    }
}

/// Exact maximum edge count of a family on n vertices in which no k-subset
/// is complete, with a witness attaining it.
pub fn max_kfree(n: usize, k: usize, budget: u64) -> Result<SearchResult, TuranError> {
    let started = Instant::now();
    if k < 4 {
        return Err(TuranError::InvalidArity {
            k,
            op: "max_kfree",
            need: "k >= 4",
        });
    }
    let size = VertexSetSize::new(n)?;
    let total = triple_count(n);

    if n < k {
        // No k-subsets exist; the full family satisfies the property.
        return Ok(SearchResult {
            n,
            k,
            max_edges: total,
            witness: TripleFamily::full(size),
            nodes_explored: 0,
            elapsed: started.elapsed(),
            complete: true,
        });
    }

    let k_count = ksubset_count(n, k);
    if k_count > 10_000_000 {
        return Err(TuranError::BudgetExceeded {
            what: "per-k-subset counter table",
            required: k_count,
            budget: 10_000_000,
        });
    }

    let mut triple_to_ks: Vec<Vec<u32>> = vec![Vec::new(); total];
    for (ki, s) in ksubsets(size, k).enumerate() {
        let v = s.vertices();
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    triple_to_ks[rank3(v[i], v[j], v[l])].push(ki as u32);
                }
            }
        }
    }

    // Incumbent from the partition construction when it satisfies the
    // property; the search then only has to prove nothing beats it.
    let mut best = 0usize;
    let mut best_ranks: Vec<usize> = Vec::new();
    let built =
        build_turan(n, k, BuildMode::Strict).or_else(|_| build_turan(n, k, BuildMode::Balanced));
    if let Ok(inst) = built {
        if verifier::is_turan_property(inst.t(), k)?.holds {
            best = inst.t().edge_count();
            best_ranks = inst.t().iter_ranks().collect();
        }
    }

    let mut state = SearchState {
        triple_to_ks: &triple_to_ks,
        k_cap: choose(k, 3) as u32,
        counts: vec![0; k_count as usize],
        chosen: Vec::with_capacity(total),
        total,
        best,
        best_ranks,
        nodes: 0,
        budget,
        exhausted: false,
    };

    // Any family missing at least one triple is isomorphic, by vertex
    // relabeling, to one missing the rank-0 triple; with n >= k something
    // must be missing, so the include branch at rank 0 is skipped.
    state.dfs(0, true);

    let mut witness = TripleFamily::empty(size);
    for &r in &state.best_ranks {
        witness.set_rank(r);
    }
    Ok(SearchResult {
        n,
        k,
        max_edges: state.best,
        witness,
        nodes_explored: state.nodes,
        elapsed: started.elapsed(),
        complete: !state.exhausted,
    })
}

/// Smallest family meeting every k-subset: C(n,3) - max_kfree. The flag is
/// false when the search hit its budget, making the value only an upper
/// bound on the true minimum.
pub fn min_cover(n: usize, k: usize, budget: u64) -> Result<(usize, bool), TuranError> {
    let result = max_kfree(n, k, budget)?;
    Ok((triple_count(n) - result.max_edges, result.complete))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: full enumeration over all 2^C(n,3) families via k-set masks.
    /// Feasible through n = 6 (2^20 masks).
    fn brute_force_max(n: usize, k: usize) -> usize {
        let size = VertexSetSize::new(n).unwrap();
        let total = triple_count(n);
        assert!(total <= 20, "oracle is exponential");
        let kmasks: Vec<u32> = ksubsets(size, k)
            .map(|s| {
                let v = s.vertices();
                let mut mask = 0u32;
                for i in 0..k {
                    for j in i + 1..k {
                        for l in j + 1..k {
                            mask |= 1 << rank3(v[i], v[j], v[l]);
                        }
                    }
                }
                mask
            })
            .collect();
        let mut best = 0;
        for fam in 0u32..1 << total {
            if kmasks.iter().all(|&km| fam & km != km) {
                best = best.max(fam.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn n4_forced_value() {
        let r = max_kfree(4, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.max_edges, 3);
        assert!(r.complete);
        assert_eq!(r.witness.edge_count(), 3);
        assert_eq!(brute_force_max(4, 4), 3);
    }

    #[test]
    fn n5_matches_full_enumeration() {
        assert_eq!(brute_force_max(5, 4), 7);
        let r = max_kfree(5, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.max_edges, 7);
        assert!(r.complete);
        assert_eq!(min_cover(5, 4, DEFAULT_NODE_BUDGET).unwrap(), (3, true));
    }

    #[test]
    fn n6_matches_full_enumeration() {
        // Oracle-computed once and frozen: 14 (cover number 6).
        assert_eq!(brute_force_max(6, 4), 14);
        let r = max_kfree(6, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.max_edges, 14);
        assert!(r.complete);
        assert!(verifier::is_turan_property(&r.witness, 4).unwrap().holds);
    }

    #[test]
    fn witnesses_pass_verification() {
        for n in 4..=6 {
            let r = max_kfree(n, 4, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(r.witness.edge_count(), r.max_edges);
            assert!(verifier::is_turan_property(&r.witness, 4).unwrap().holds);
        }
    }

    #[test]
    fn cover_plus_free_is_capacity() {
        for n in 4..=6 {
            let r = max_kfree(n, 4, DEFAULT_NODE_BUDGET).unwrap();
            let (cover, complete) = min_cover(n, 4, DEFAULT_NODE_BUDGET).unwrap();
            assert!(complete);
            assert_eq!(r.max_edges + cover, triple_count(n));
        }
    }

    #[test]
    fn no_ksubsets_means_everything_fits() {
        let r = max_kfree(4, 5, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.max_edges, 4);
        assert!(r.complete);
        assert_eq!(r.nodes_explored, 0);
        assert_eq!(min_cover(4, 5, DEFAULT_NODE_BUDGET).unwrap(), (0, true));
    }

    #[test]
    fn construction_never_beats_the_optimum() {
        // The only strict instance small enough to search exactly.
        let inst = build_turan(6, 4, BuildMode::Strict).unwrap();
        let r = max_kfree(6, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert!(inst.t().edge_count() <= r.max_edges);
        // Equality holds here; the witness is the construction itself.
        assert_eq!(inst.t().edge_count(), r.max_edges);
        assert_eq!(&r.witness, inst.t());
    }

    #[test]
    fn monotone_in_n() {
        let mut prev = 0;
        for n in 4..=6 {
            let r = max_kfree(n, 4, DEFAULT_NODE_BUDGET).unwrap();
            assert!(r.max_edges >= prev);
            prev = r.max_edges;
        }
    }

    #[test]
    fn budget_exhaustion_flags_partial_result() {
        let r = max_kfree(6, 4, 5).unwrap();
        assert!(!r.complete);
        assert_eq!(r.nodes_explored, 6);
        // The incumbent construction still provides a valid lower bound.
        assert_eq!(r.max_edges, 14);
        assert!(verifier::is_turan_property(&r.witness, 4).unwrap().holds);
        let (cover, complete) = min_cover(6, 4, 5).unwrap();
        assert!(!complete);
        assert_eq!(cover, 6);
    }

    #[test]
    fn nodes_reproducible() {
        let a = max_kfree(6, 4, DEFAULT_NODE_BUDGET).unwrap();
        let b = max_kfree(6, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(a.nodes_explored, b.nodes_explored);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn arity_checked() {
        assert!(max_kfree(5, 3, 100).is_err());
    }
}
