//! Least-squares fit of the stationarity condition ∇N = λ∇R.
//!
//! λ* minimizes ‖∇N − λ∇R‖ over λ, so the reported residual measures how
//! far the point is from satisfying the first-order condition along the
//! constraint gradient.

use serde::Serialize;

use crate::error::TuranError;

use super::gradient::{grad_n, grad_r};
use super::system::{EdgeSystem, FormulaVariant, SmoothingParams};

/// Constraint-gradient norms below this leave λ unidentifiable.
pub const DEGENERATE_GRAD_NORM: f64 = 1e-14;

/// The fitted multiplier and the norms behind it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KktReport {
    pub lambda_star: f64,
    pub residual_norm: f64,
    #[serde(rename = "grad_N_norm")]
    pub grad_n_norm: f64,
    #[serde(rename = "grad_R_norm")]
    pub grad_r_norm: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fits λ* = ⟨∇N, ∇R⟩ / ⟨∇R, ∇R⟩ and the residual ‖∇N − λ*∇R‖ from
/// explicit gradient vectors.
pub fn kkt_from_gradients(gn: &[f64], gr: &[f64]) -> Result<KktReport, TuranError> {
    assert_eq!(gn.len(), gr.len(), "gradient lengths differ");
    let gr_sq = dot(gr, gr);
    let gr_norm = gr_sq.sqrt();
    if gr_norm < DEGENERATE_GRAD_NORM {
        return Err(TuranError::DegenerateGradient {
            norm: gr_norm,
            threshold: DEGENERATE_GRAD_NORM,
        });
    }
    let lambda = dot(gn, gr) / gr_sq;
    let residual = gn
        .iter()
        .zip(gr)
        .map(|(n, r)| {
            let d = n - lambda * r;
            d * d
        })
        .sum::<f64>()
        .sqrt();
    Ok(KktReport {
        lambda_star: lambda,
        residual_norm: residual,
        grad_n_norm: dot(gn, gn).sqrt(),
        grad_r_norm: gr_norm,
    })
}

/// Evaluates both gradients at the system and fits the multiplier.
pub fn kkt_fit(
    sys: &EdgeSystem,
    p: &SmoothingParams,
    variant: FormulaVariant,
) -> Result<KktReport, TuranError> {
    let gn = grad_n(sys, p);
    let gr = grad_r(sys, p, variant)?;
    kkt_from_gradients(&gn, &gr)
}
