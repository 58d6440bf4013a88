//! Analytic gradients of the smoothed objectives in the β coordinates.
//!
//! Both objectives are compositions of Gaussian CDFs, so the partials are
//! products of Gaussian densities divided by powers of σ. Entries are laid
//! out edge-major: ∂/∂β_{i,j} lives at index i·n + j. Central finite
//! differences of the objectives are provided as the test oracle.

use crate::binom::triple_count;
use crate::error::TuranError;
use crate::exec;
use crate::ksubset::{advance_lex, unrank_lex};
use crate::triple::rank3;

use super::objective::{
    check_k_budget, objective_n, objective_r_with_cap, walk_ranks, K_CHUNK, R_VERTEX_CAP,
    TRIPLE_CHUNK,
};
use super::phi::{gauss_cdf, gauss_pdf};
use super::system::{EdgeSystem, FormulaVariant, SmoothingParams};

/// ∂N/∂β_{i,j} = Σ_x φ′(v(x))·φ′(u_i(x))·(1_x)_j / σ², where
/// u_i = (⟨1_x, β_i⟩ − 3)/σ and v = (s(x) − 1/2)/σ.
pub fn grad_n(sys: &EdgeSystem, p: &SmoothingParams) -> Vec<f64> {
    let n = sys.n();
    let m = sys.m();
    let sigma = p.sigma();
    let inv_s2 = 1.0 / (sigma * sigma);
    exec::accumulate_chunks(triple_count(n) as u64, TRIPLE_CHUNK, m * n, |range, buf| {
        let mut us = vec![0.0; m];
        walk_ranks(range, n, |_, x| {
            let mut s = 0.0;
            for (i, beta) in sys.betas().iter().enumerate() {
                us[i] = (beta.triple_sum(x) - 3.0) / sigma;
                s += gauss_cdf(us[i]);
            }
            let outer = gauss_pdf((s - 0.5) / sigma) * inv_s2;
            if outer != 0.0 {
                for (i, &u) in us.iter().enumerate() {
                    let f = outer * gauss_pdf(u);
                    if f != 0.0 {
                        for j in x.vertices() {
                            buf[i * n + j] += f;
                        }
                    }
                }
            }
        });
    })
}

/// Per-rank data grad_R needs: the K-independent chain factor for each
/// triple and the per-edge density φ′(u_i).
fn r_rank_factors(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
) -> (Vec<f64>, Vec<f64>) {
    let n = sys.n();
    let m = sys.m();
    let sigma = p.sigma();
    let threshold = 1.0 - p.epsilon();
    let inv_s3 = 1.0 / (sigma * sigma * sigma);
    let parts: Vec<(Vec<f64>, Vec<f64>)> =
        exec::map_chunks(triple_count(n) as u64, TRIPLE_CHUNK, |range| {
            let len = (range.end - range.start) as usize;
            let mut coeffs = Vec::with_capacity(len);
            let mut pus = Vec::with_capacity(len * m);
            walk_ranks(range, n, |_, x| {
                let mut s = 0.0;
                for beta in sys.betas() {
                    let u = (beta.triple_sum(x) - 3.0) / sigma;
                    pus.push(gauss_pdf(u));
                    s += gauss_cdf(u);
                }
                let coeff = match variant {
                    FormulaVariant::A => {
                        let v = (s - 0.5) / sigma;
                        let e = gauss_cdf(v);
                        gauss_pdf((e - threshold) / sigma) * gauss_pdf(v) * inv_s3
                    }
                    FormulaVariant::B => {
                        let v = s - 0.5;
                        let e = gauss_cdf(v);
                        gauss_pdf((e / sigma - threshold) / sigma) * gauss_pdf(v) * inv_s3
                    }
                };
                coeffs.push(coeff);
            });
            (coeffs, pus)
        });
    let mut coeffs = Vec::with_capacity(triple_count(n));
    let mut pus = Vec::with_capacity(triple_count(n) * m);
    for (c, u) in parts {
        coeffs.extend(c);
        pus.extend(u);
    }
    (coeffs, pus)
}

/// ∂R/∂β_{i,j} = −Σ_K Σ_{x ⊆ K, x ∋ j} chain(x)·φ′(u_i(x)), with the
/// cap on n as for the objective.
pub fn grad_r_with_cap(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
    cap: usize,
) -> Result<Vec<f64>, TuranError> {
    let (n, k) = (sys.n(), sys.k());
    let m = sys.m();
    if n > cap {
        return Err(TuranError::VertexCapExceeded { n, cap });
    }
    if k > n {
        return Ok(vec![0.0; m * n]);
    }
    let kcount = check_k_budget(n, k)?;
    let (coeffs, pus) = r_rank_factors(sys, p, variant);
    Ok(exec::accumulate_chunks(
        kcount,
        K_CHUNK,
        m * n,
        |range, buf| {
            if range.is_empty() {
                return;
            }
            let mut sub = unrank_lex(range.start, n, k);
            for kr in range.start..range.end {
                for l in 2..k {
                    for j in 1..l {
                        for i in 0..j {
                            let (va, vb, vc) = (sub[i], sub[j], sub[l]);
                            let r = rank3(va, vb, vc);
                            let coeff = coeffs[r];
                            if coeff == 0.0 {
                                continue;
                            }
                            for (idx, pu) in pus[r * m..(r + 1) * m].iter().enumerate() {
                                let f = coeff * pu;
                                if f != 0.0 {
                                    buf[idx * n + va] -= f;
                                    buf[idx * n + vb] -= f;
                                    buf[idx * n + vc] -= f;
                                }
                            }
                        }
                    }
                }
                if kr + 1 < range.end {
                    advance_lex(&mut sub, n);
                }
            }
        },
    ))
}

/// grad_R under the default vertex cap.
pub fn grad_r(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
) -> Result<Vec<f64>, TuranError> {
    grad_r_with_cap(sys, p, variant, R_VERTEX_CAP)
}

fn fd_over_coords<F>(sys: &EdgeSystem, h: f64, mut eval: F) -> Vec<f64>
where
    F: FnMut(&EdgeSystem) -> f64,
{
    let (n, m) = (sys.n(), sys.m());
    let mut work = sys.clone();
    let mut grad = vec![0.0; m * n];
    for i in 0..m {
        for j in 0..n {
            let orig = work.betas()[i].coords()[j];
            work.beta_mut(i).coords_mut()[j] = orig + h;
            let plus = eval(&work);
            work.beta_mut(i).coords_mut()[j] = orig - h;
            let minus = eval(&work);
            work.beta_mut(i).coords_mut()[j] = orig;
            grad[i * n + j] = (plus - minus) / (2.0 * h);
        }
    }
    grad
}

/// Central-difference gradient of N, the oracle for `grad_n`.
pub fn fd_grad_n(sys: &EdgeSystem, p: &SmoothingParams, h: f64) -> Vec<f64> {
    fd_over_coords(sys, h, |s| objective_n(s, p))
}

/// Central-difference gradient of R, the oracle for `grad_r`.
pub fn fd_grad_r(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
    h: f64,
) -> Result<Vec<f64>, TuranError> {
    let mut err = None;
    let grad = fd_over_coords(sys, h, |s| {
        match objective_r_with_cap(s, p, variant, R_VERTEX_CAP) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(grad),
    }
}

/// Relative disagreement of two vectors in the Euclidean norm:
/// ‖a − b‖ / max(‖a‖, ‖b‖, 1e−12).
pub fn l2_relative_error(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "vectors must have equal length");
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    diff / norm(a).max(norm(b)).max(1e-12)
}

/// Analytic-vs-finite-difference agreement for both objectives.
#[derive(Clone, Copy, Debug)]
pub struct GradCheckReport {
    pub rel_err_n: f64,
    pub rel_err_r: f64,
    pub max_abs_diff_n: f64,
    pub max_abs_diff_r: f64,
}

/// Runs both gradients against their central-difference oracles.
pub fn grad_check(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
    h: f64,
) -> Result<GradCheckReport, TuranError> {
    let an = grad_n(sys, p);
    let fn_ = fd_grad_n(sys, p, h);
    let ar = grad_r(sys, p, variant)?;
    let fr = fd_grad_r(sys, p, variant, h)?;
    let max_abs = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max)
    };
    Ok(GradCheckReport {
        rel_err_n: l2_relative_error(&an, &fn_),
        rel_err_r: l2_relative_error(&ar, &fr),
        max_abs_diff_n: max_abs(&an, &fn_),
        max_abs_diff_r: max_abs(&ar, &fr),
    })
}
