//! Smoothed-counting numerics over relaxed edge systems.
//!
//! Triple membership is relaxed through nested Gaussian CDFs: a soft count
//! s(x) of edge vectors sitting on each triple, a soft membership e(x),
//! the total N, and the k-subset objective R. On top sit analytic
//! gradients, their finite-difference oracles, a least-squares fit of the
//! stationarity multiplier, gradient symmetry identities at the partition
//! construction, and a midpoint-convexity probe.

mod gradient;
mod kkt;
mod objective;
mod phi;
mod probe;
mod symmetry;
mod system;

pub use gradient::{
    fd_grad_n, fd_grad_r, grad_check, grad_n, grad_r, grad_r_with_cap, l2_relative_error,
    GradCheckReport,
};
pub use kkt::{kkt_fit, kkt_from_gradients, KktReport, DEGENERATE_GRAD_NORM};
pub use objective::{
    objective_n, objective_r, objective_r_with_cap, soft_count, soft_membership, R_VERTEX_CAP,
};
pub use phi::{gauss_cdf, gauss_pdf, CDF_SATURATION};
pub use probe::{convexity_probe, ConvexityProbe};
pub use symmetry::{
    symmetry_report, PairClass, SymmetryPair, SymmetryReport, SystemFamily, ZeroClaimRow,
};
pub use system::{
    random_relaxed_system, EdgeSystem, FormulaVariant, RelaxedEdgeVector, SmoothingParams,
};
