//! Midpoint-convexity diagnostics for the smoothed objectives.
//!
//! Convexity of N and concavity of R are sampled, never assumed: random
//! segments between random relaxed systems are tested at their midpoint
//! and the violations are counted and sized. The result is a measurement
//! report, not an assertion.

use crate::error::TuranError;

use super::objective::{objective_n, objective_r};
use super::system::{
    random_relaxed_system, EdgeSystem, FormulaVariant, RelaxedEdgeVector, SmoothingParams,
};

/// Counts and magnitudes of midpoint violations over sampled segments.
#[derive(Clone, Copy, Debug)]
pub struct ConvexityProbe {
    pub segments: usize,
    /// Segments where N(mid) exceeded the chord average (against convexity).
    pub n_violations: usize,
    /// Segments where R(mid) fell below the chord average (against concavity).
    pub r_violations: usize,
    pub max_n_violation: f64,
    pub max_r_violation: f64,
}

fn midpoint(a: &EdgeSystem, b: &EdgeSystem) -> Result<EdgeSystem, TuranError> {
    let betas = a
        .betas()
        .iter()
        .zip(b.betas())
        .map(|(x, y)| {
            RelaxedEdgeVector::from_coords(
                x.coords()
                    .iter()
                    .zip(y.coords())
                    .map(|(u, v)| 0.5 * (u + v))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    EdgeSystem::new(a.n(), a.k(), betas)
}

/// Samples `segments` random segments of systems with the given shape and
/// measures midpoint-convexity of N and midpoint-concavity of R.
pub fn convexity_probe(
    n: usize,
    k: usize,
    m: usize,
    p: &SmoothingParams,
    variant: FormulaVariant,
    segments: usize,
    seed: u64,
) -> Result<ConvexityProbe, TuranError> {
    let mut probe = ConvexityProbe {
        segments,
        n_violations: 0,
        r_violations: 0,
        max_n_violation: 0.0,
        max_r_violation: 0.0,
    };
    for seg in 0..segments as u64 {
        let a = random_relaxed_system(n, k, m, seed.wrapping_add(2 * seg))?;
        let b = random_relaxed_system(n, k, m, seed.wrapping_add(2 * seg + 1))?;
        let mid = midpoint(&a, &b)?;

        let chord_n = 0.5 * (objective_n(&a, p) + objective_n(&b, p));
        let excess_n = objective_n(&mid, p) - chord_n;
        if excess_n > 1e-12 {
            probe.n_violations += 1;
            probe.max_n_violation = probe.max_n_violation.max(excess_n);
        }

        let chord_r = 0.5 * (objective_r(&a, p, variant)? + objective_r(&b, p, variant)?);
        let deficit_r = chord_r - objective_r(&mid, p, variant)?;
        if deficit_r > 1e-12 {
            probe.r_violations += 1;
            probe.max_r_violation = probe.max_r_violation.max(deficit_r);
        }
    }
    Ok(probe)
}
