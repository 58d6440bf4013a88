//! Relaxed edge vectors and the systems the smoothed objectives act on.
//!
//! A system holds M length-n real vectors. The canonical form of a vector
//! is the 0/1 indicator of a triple; relaxed coordinates are allowed
//! everywhere so gradients and finite differences can move freely.

use std::fmt;
use std::str::FromStr;

use crate::error::TuranError;
use crate::family::TripleFamily;
use crate::triple::{UniformTriple, VertexSetSize};

/// One real vector β ∈ ℝⁿ standing in for a (possibly relaxed) triple.
#[derive(Clone, Debug, PartialEq)]
pub struct RelaxedEdgeVector {
    coords: Vec<f64>,
}

impl RelaxedEdgeVector {
    /// The 0/1 indicator vector of a triple.
    pub fn canonical(n: usize, t: UniformTriple) -> Self {
        assert!(t.c() < n, "triple does not fit in {n} vertices");
        let mut coords = vec![0.0; n];
        for v in t.vertices() {
            coords[v] = 1.0;
        }
        Self { coords }
    }

    /// Arbitrary finite coordinates.
    pub fn from_coords(coords: Vec<f64>) -> Result<Self, TuranError> {
        if coords.len() < 3 {
            return Err(TuranError::InvalidParameter {
                what: format!(
                    "edge vector needs at least 3 coordinates, got {}",
                    coords.len()
                ),
            });
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(TuranError::InvalidParameter {
                what: format!("edge vector coordinate {bad} is not finite"),
            });
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// True when exactly three coordinates equal 1 and the rest are 0.
    pub fn is_canonical(&self) -> bool {
        let ones = self.coords.iter().filter(|&&c| c == 1.0).count();
        let zeros = self.coords.iter().filter(|&&c| c == 0.0).count();
        ones == 3 && ones + zeros == self.coords.len()
    }

    /// The triple a canonical vector indicates, if it is canonical.
    pub fn support(&self) -> Option<UniformTriple> {
        if !self.is_canonical() {
            return None;
        }
        let mut vs = self.coords.iter().enumerate().filter(|(_, &c)| c == 1.0);
        let a = vs.next()?.0;
        let b = vs.next()?.0;
        let c = vs.next()?.0;
        UniformTriple::new(a, b, c).ok()
    }

    /// Sum of the three coordinates a triple indicates: ⟨1_x, β⟩.
    pub(crate) fn triple_sum(&self, x: UniformTriple) -> f64 {
        self.coords[x.a()] + self.coords[x.b()] + self.coords[x.c()]
    }
}

/// A collection of M edge vectors over n vertices, evaluated against
/// k-subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSystem {
    n: usize,
    k: usize,
    betas: Vec<RelaxedEdgeVector>,
}

impl EdgeSystem {
    /// Wraps vectors after checking they all have length n and k ≥ 4.
    /// An empty system (M = 0) is allowed, as is k > n; the k-subset
    /// objectives treat both as the natural empty sums.
    pub fn new(n: usize, k: usize, betas: Vec<RelaxedEdgeVector>) -> Result<Self, TuranError> {
        VertexSetSize::new(n)?;
        if k < 4 {
            return Err(TuranError::InvalidArity {
                k,
                op: "EdgeSystem::new",
                need: "k >= 4",
            });
        }
        if let Some(bad) = betas.iter().position(|b| b.len() != n) {
            return Err(TuranError::InvalidParameter {
                what: format!(
                    "edge vector {bad} has length {}, system needs {n}",
                    betas[bad].len()
                ),
            });
        }
        Ok(Self { n, k, betas })
    }

    /// Canonical system whose vectors are the family's edges in rank order.
    pub fn canonical_from_family(f: &TripleFamily, k: usize) -> Result<Self, TuranError> {
        let n = f.n().get();
        let betas = f
            .iter_edges()
            .map(|t| RelaxedEdgeVector::canonical(n, t))
            .collect();
        Self::new(n, k, betas)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// M, the number of edge vectors.
    pub fn m(&self) -> usize {
        self.betas.len()
    }

    pub fn betas(&self) -> &[RelaxedEdgeVector] {
        &self.betas
    }

    pub(crate) fn beta_mut(&mut self, i: usize) -> &mut RelaxedEdgeVector {
        &mut self.betas[i]
    }

    /// The system with every vector's coordinates relabeled by the vertex
    /// permutation π: coordinate j moves to position π(j).
    pub fn permuted(&self, pi: &[usize]) -> Result<Self, TuranError> {
        if pi.len() != self.n {
            return Err(TuranError::InvalidParameter {
                what: format!("permutation has length {}, need {}", pi.len(), self.n),
            });
        }
        let mut seen = vec![false; self.n];
        for &image in pi {
            if image >= self.n || seen[image] {
                return Err(TuranError::InvalidParameter {
                    what: format!("not a permutation of 0..{}", self.n),
                });
            }
            seen[image] = true;
        }
        let betas = self
            .betas
            .iter()
            .map(|b| {
                let mut coords = vec![0.0; self.n];
                for (j, &c) in b.coords().iter().enumerate() {
                    coords[pi[j]] = c;
                }
                RelaxedEdgeVector { coords }
            })
            .collect();
        Ok(Self {
            n: self.n,
            k: self.k,
            betas,
        })
    }
}

/// Width and threshold of the smoothed indicators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothingParams {
    sigma: f64,
    epsilon: f64,
}

impl SmoothingParams {
    pub const DEFAULT_EPSILON: f64 = 0.25;

    pub fn new(sigma: f64, epsilon: f64) -> Result<Self, TuranError> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(TuranError::InvalidParameter {
                what: format!("sigma must be a positive real, got {sigma}"),
            });
        }
        if !(epsilon.is_finite() && 0.0 < epsilon && epsilon < 1.0) {
            return Err(TuranError::InvalidParameter {
                what: format!("epsilon must lie in (0, 1), got {epsilon}"),
            });
        }
        Ok(Self { sigma, epsilon })
    }

    pub fn sigma(self) -> f64 {
        self.sigma
    }

    pub fn epsilon(self) -> f64 {
        self.epsilon
    }
}

/// Which nesting the k-subset objective uses. The source display's
/// delimiters are unbalanced, so both readings are kept: `A` mirrors the
/// triple-count objective's structure, `B` is the literal alternative
/// with the width division outside the middle CDF.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaVariant {
    A,
    B,
}

impl fmt::Display for FormulaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaVariant::A => write!(f, "a"),
            FormulaVariant::B => write!(f, "b"),
        }
    }
}

impl FromStr for FormulaVariant {
    type Err = TuranError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(FormulaVariant::A),
            "b" | "B" => Ok(FormulaVariant::B),
            other => Err(TuranError::InvalidParameter {
                what: format!("formula variant must be 'a' or 'b', got '{other}'"),
            }),
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A reproducible relaxed system with coordinates drawn uniformly from
/// [0.5, 1.1), a band that keeps every smoothed indicator responsive at
/// moderate widths.
pub fn random_relaxed_system(
    n: usize,
    k: usize,
    m: usize,
    seed: u64,
) -> Result<EdgeSystem, TuranError> {
    let mut state = seed;
    let betas = (0..m)
        .map(|_| RelaxedEdgeVector {
            coords: (0..n)
                .map(|_| 0.5 + 0.6 * unit_f64(splitmix64(&mut state)))
                .collect(),
        })
        .collect();
    EdgeSystem::new(n, k, betas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::TripleFamily;

    fn t(a: usize, b: usize, c: usize) -> UniformTriple {
        UniformTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn canonical_roundtrip() {
        let v = RelaxedEdgeVector::canonical(6, t(1, 3, 5));
        assert!(v.is_canonical());
        assert_eq!(v.support(), Some(t(1, 3, 5)));
        assert_eq!(v.coords(), &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
        assert_eq!(v.triple_sum(t(1, 3, 5)), 3.0);
        assert_eq!(v.triple_sum(t(0, 2, 4)), 0.0);
        assert_eq!(v.triple_sum(t(1, 2, 3)), 2.0);
    }

    #[test]
    fn non_canonical_detected() {
        let v = RelaxedEdgeVector::from_coords(vec![1.0, 1.0, 0.5, 0.0]).unwrap();
        assert!(!v.is_canonical());
        assert!(v.support().is_none());
        assert!(RelaxedEdgeVector::from_coords(vec![1.0, f64::NAN, 0.0]).is_err());
        assert!(RelaxedEdgeVector::from_coords(vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn system_validation() {
        let n = VertexSetSize::new(5).unwrap();
        let fam = TripleFamily::from_triples(n, [t(0, 1, 2), t(2, 3, 4)]).unwrap();
        let sys = EdgeSystem::canonical_from_family(&fam, 4).unwrap();
        assert_eq!((sys.n(), sys.k(), sys.m()), (5, 4, 2));
        assert_eq!(sys.betas()[0].support(), Some(t(0, 1, 2)));
        assert_eq!(sys.betas()[1].support(), Some(t(2, 3, 4)));

        assert!(EdgeSystem::new(5, 3, vec![]).is_err());
        assert!(EdgeSystem::new(5, 6, vec![]).is_ok());
        assert!(EdgeSystem::new(5, 4, vec![]).unwrap().m() == 0);
        let short = RelaxedEdgeVector::from_coords(vec![0.0; 4]).unwrap();
        assert!(EdgeSystem::new(5, 4, vec![short]).is_err());
    }

    #[test]
    fn params_validated() {
        assert!(SmoothingParams::new(0.5, 0.25).is_ok());
        assert!(SmoothingParams::new(0.0, 0.25).is_err());
        assert!(SmoothingParams::new(-1.0, 0.25).is_err());
        assert!(SmoothingParams::new(f64::NAN, 0.25).is_err());
        assert!(SmoothingParams::new(1.0, 0.0).is_err());
        assert!(SmoothingParams::new(1.0, 1.0).is_err());
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("a".parse::<FormulaVariant>().unwrap(), FormulaVariant::A);
        assert_eq!("B".parse::<FormulaVariant>().unwrap(), FormulaVariant::B);
        assert!("c".parse::<FormulaVariant>().is_err());
        assert_eq!(FormulaVariant::A.to_string(), "a");
    }

    #[test]
    fn permutation_relabels_coordinates() {
        let v = RelaxedEdgeVector::canonical(5, t(0, 1, 2));
        let sys = EdgeSystem::new(5, 4, vec![v]).unwrap();
        // cycle 0 -> 1 -> 2 -> 3 -> 4 -> 0
        let rotated = sys.permuted(&[1, 2, 3, 4, 0]).unwrap();
        assert_eq!(rotated.betas()[0].support(), Some(t(1, 2, 3)));
        assert!(sys.permuted(&[0, 0, 1, 2, 3]).is_err());
        assert!(sys.permuted(&[0, 1, 2]).is_err());
    }

    #[test]
    fn random_system_reproducible_and_in_band() {
        let a = random_relaxed_system(6, 4, 5, 42).unwrap();
        let b = random_relaxed_system(6, 4, 5, 42).unwrap();
        let c = random_relaxed_system(6, 4, 5, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for beta in a.betas() {
            for &x in beta.coords() {
                assert!((0.5..1.1).contains(&x));
            }
        }
    }
}
