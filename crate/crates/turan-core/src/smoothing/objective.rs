//! The two smoothed objectives.
//!
//! N counts triples softly: each triple x contributes a CDF-of-CDF score
//! e(x) that approaches 1 when some edge vector sits on x and 0 when none
//! does. R aggregates the same scores over every k-subset, measuring how
//! far the system is from meeting each complete k-set. All sums run in
//! fixed chunk order so results are bit-identical whatever the thread
//! count.

use std::ops::Range;

use crate::binom::{choose, triple_count};
use crate::error::TuranError;
use crate::exec;
use crate::ksubset::{advance_lex, ksubset_count, unrank_lex};
use crate::triple::{next_colex, rank3, unrank3, UniformTriple};

use super::phi::gauss_cdf;
use super::system::{EdgeSystem, FormulaVariant, SmoothingParams};

/// Default vertex cap for the k-subset objective; C(n,k)·C(k,3) grows too
/// fast to evaluate casually past this.
pub const R_VERTEX_CAP: usize = 16;

/// Hard ceiling on the number of k-subsets the capped evaluators accept.
const K_TERM_BUDGET: u64 = 100_000_000;

pub(crate) const TRIPLE_CHUNK: u64 = 1024;
pub(crate) const K_CHUNK: u64 = 256;

/// Calls f(rank, triple) for every rank in the range, in rank order.
pub(crate) fn walk_ranks<F>(range: Range<u64>, n: usize, mut f: F)
where
    F: FnMut(usize, UniformTriple),
{
    if range.is_empty() {
        return;
    }
    let mut t = unrank3(range.start as usize, n);
    for r in range.start..range.end {
        f(r as usize, t);
        if r + 1 < range.end {
            next_colex(&mut t);
        }
    }
}

/// s(x) = Σ_i Φ((⟨1_x, β_i⟩ − 3)/σ), the soft number of edge vectors
/// sitting on the triple x.
pub fn soft_count(x: UniformTriple, sys: &EdgeSystem, p: &SmoothingParams) -> f64 {
    assert!(
        x.c() < sys.n(),
        "triple does not fit in {} vertices",
        sys.n()
    );
    let sigma = p.sigma();
    sys.betas()
        .iter()
        .map(|b| gauss_cdf((b.triple_sum(x) - 3.0) / sigma))
        .sum()
}

/// e(x) = Φ((s(x) − 1/2)/σ), the soft indicator that x is an edge.
pub fn soft_membership(x: UniformTriple, sys: &EdgeSystem, p: &SmoothingParams) -> f64 {
    gauss_cdf((soft_count(x, sys, p) - 0.5) / p.sigma())
}

/// N = Σ over all C(n,3) triples of e(x).
pub fn objective_n(sys: &EdgeSystem, p: &SmoothingParams) -> f64 {
    let n = sys.n();
    exec::sum_chunks(triple_count(n) as u64, TRIPLE_CHUNK, |range| {
        let mut acc = 0.0;
        walk_ranks(range, n, |_, x| {
            acc += soft_membership(x, sys, p);
        });
        acc
    })
}

/// The k-subset term for one triple under the chosen nesting.
fn r_term(s: f64, p: &SmoothingParams, variant: FormulaVariant) -> f64 {
    let sigma = p.sigma();
    let threshold = 1.0 - p.epsilon();
    match variant {
        FormulaVariant::A => {
            let e = gauss_cdf((s - 0.5) / sigma);
            gauss_cdf((e - threshold) / sigma)
        }
        FormulaVariant::B => {
            let e = gauss_cdf(s - 0.5);
            gauss_cdf((e / sigma - threshold) / sigma)
        }
    }
}

/// Per-rank k-subset terms for every triple, in rank order.
fn r_terms(sys: &EdgeSystem, p: &SmoothingParams, variant: FormulaVariant) -> Vec<f64> {
    let n = sys.n();
    let parts: Vec<Vec<f64>> = exec::map_chunks(triple_count(n) as u64, TRIPLE_CHUNK, |range| {
        let mut part = Vec::with_capacity((range.end - range.start) as usize);
        walk_ranks(range, n, |_, x| {
            part.push(r_term(soft_count(x, sys, p), p, variant));
        });
        part
    });
    parts.into_iter().flatten().collect()
}

pub(crate) fn check_k_budget(n: usize, k: usize) -> Result<u64, TuranError> {
    let kcount = ksubset_count(n, k);
    if kcount > K_TERM_BUDGET as u128 {
        return Err(TuranError::BudgetExceeded {
            what: "k-subset objective",
            required: kcount,
            budget: K_TERM_BUDGET,
        });
    }
    Ok(kcount as u64)
}

/// R = C(n,k) − Σ_K Σ_{x ⊆ K} term(x), summed K by K in lex rank order
/// and within each K in colex order. Errors when n exceeds the cap.
pub fn objective_r_with_cap(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
    cap: usize,
) -> Result<f64, TuranError> {
    let (n, k) = (sys.n(), sys.k());
    if n > cap {
        return Err(TuranError::VertexCapExceeded { n, cap });
    }
    if k > n {
        // No k-subsets exist; both the count and the sum are empty.
        return Ok(0.0);
    }
    let kcount = check_k_budget(n, k)?;
    let terms = r_terms(sys, p, variant);
    let sum = exec::sum_chunks(kcount, K_CHUNK, |range| {
        let mut acc = 0.0;
        if range.is_empty() {
            return acc;
        }
        let mut sub = unrank_lex(range.start, n, k);
        for kr in range.start..range.end {
            for l in 2..k {
                for j in 1..l {
                    for i in 0..j {
                        acc += terms[rank3(sub[i], sub[j], sub[l])];
                    }
                }
            }
            if kr + 1 < range.end {
                advance_lex(&mut sub, n);
            }
        }
        acc
    });
    Ok(choose(n, k) as f64 - sum)
}

/// R under the default vertex cap.
pub fn objective_r(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
) -> Result<f64, TuranError> {
    objective_r_with_cap(sys, p, variant, R_VERTEX_CAP)
}
