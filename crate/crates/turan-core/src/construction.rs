//! The cyclic-partition extremal family and its density numbers.
//!
//! Vertices are split into k-1 contiguous parts; the complement family T̄
//! holds exactly the triples inside one part plus those with two vertices in
//! a part and the third in the cyclically next part. T is the complement.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::binom::{choose, triple_count, MAX_VERTICES};
use crate::error::TuranError;
use crate::family::TripleFamily;
use crate::triple::{unrank3, VertexSetSize};

/// Strict mode requires (k-1) | n and equal parts; balanced mode allows any
/// n >= k with part sizes differing by at most one (larger parts first) and
/// is experimental: the optimality discussion only covers strict instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    Strict,
    Balanced,
}

impl std::fmt::Display for BuildMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BuildMode::Strict => "strict",
            BuildMode::Balanced => "balanced",
        })
    }
}

/// A built instance: the partition plus both families.
#[derive(Clone, Debug)]
pub struct TuranInstance {
    n: VertexSetSize,
    k: usize,
    mode: BuildMode,
    part_sizes: Vec<usize>,
    part_of: Vec<usize>,
    t: TripleFamily,
    tbar: TripleFamily,
}

impl TuranInstance {
    pub fn n(&self) -> usize {
        self.n.get()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> BuildMode {
        self.mode
    }

    pub fn is_experimental(&self) -> bool {
        self.mode == BuildMode::Balanced
    }

    /// Part sizes, largest first; uniform in strict mode.
    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    /// Largest part size; in strict mode this is n / (k-1).
    pub fn m(&self) -> usize {
        self.part_sizes[0]
    }

    /// Part index of each vertex.
    pub fn part_of(&self) -> &[usize] {
        &self.part_of
    }

    /// The main family (complement of the membership rule).
    pub fn t(&self) -> &TripleFamily {
        &self.t
    }

    /// The complement family defined by the membership rule.
    pub fn tbar(&self) -> &TripleFamily {
        &self.tbar
    }
}

/// Builds the instance for k >= 4 and n >= k.
pub fn build_turan(n: usize, k: usize, mode: BuildMode) -> Result<TuranInstance, TuranError> {
    if k < 4 {
        return Err(TuranError::InvalidArity {
            k,
            op: "build_turan",
            need: "k >= 4",
        });
    }
    let size = VertexSetSize::new(n)?;
    if n < k {
        return Err(TuranError::InvalidArity {
            k,
            op: "build_turan",
            need: "n >= k",
        });
    }
    let parts = k - 1;
    let part_sizes: Vec<usize> = match mode {
        BuildMode::Strict => {
            if !n.is_multiple_of(parts) {
                return Err(TuranError::Divisibility { n, km1: parts });
            }
            vec![n / parts; parts]
        }
        BuildMode::Balanced => {
            let floor = n / parts;
            let rem = n % parts;
            (0..parts)
                .map(|i| if i < rem { floor + 1 } else { floor })
                .collect()
        }
    };

    let mut part_of = Vec::with_capacity(n);
    for (p, &sz) in part_sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, sz));
    }
    debug_assert_eq!(part_of.len(), n);

    let mut tbar = TripleFamily::empty(size);
    let mut t = crate::triple::unrank3(0, n);
    for rank in 0..triple_count(n) {
        if rank > 0 {
            crate::triple::next_colex(&mut t);
        }
        debug_assert_eq!(t, unrank3(rank, n));
        let (pa, pb, pc) = (part_of[t.a()], part_of[t.b()], part_of[t.c()]);
        // Contiguous parts make pa <= pb <= pc, so "two in one part" is
        // either pa == pb (third is c) or pb == pc (third is a).
        let member = if pa == pc {
            true
        } else if pa == pb {
            pc == (pa + 1) % parts
        } else if pb == pc {
            pa == (pb + 1) % parts
        } else {
            false
        };
        if member {
            tbar.set_rank(rank);
        }
    }

    Ok(TuranInstance {
        n: size,
        k,
        mode,
        part_sizes,
        part_of,
        t: tbar.complement(),
        tbar,
    })
}

/// Closed form for |T̄| on strict instances: (k-1) * (C(m,3) + m*C(m,2))
/// with m = n / (k-1). Accepts any n with (k-1) | n, including n < k.
pub fn complement_count_closed(n: usize, k: usize) -> Result<u64, TuranError> {
    if k < 4 {
        return Err(TuranError::InvalidArity {
            k,
            op: "complement_count_closed",
            need: "k >= 4",
        });
    }
    if n > MAX_VERTICES {
        return Err(TuranError::VertexCount {
            n,
            min: VertexSetSize::MIN,
            max: MAX_VERTICES,
        });
    }
    let parts = k - 1;
    if !n.is_multiple_of(parts) {
        return Err(TuranError::Divisibility { n, km1: parts });
    }
    let m = n / parts;
    Ok(parts as u64 * (choose(m, 3) as u64 + m as u64 * choose(m, 2) as u64))
}

/// Limiting edge density of T: exactly 1 - 4/(k-1)^2.
pub fn density_limit(k: usize) -> Ratio<i64> {
    assert!(k >= 4, "density_limit needs k >= 4, got {k}");
    let km1 = (k - 1) as i64;
    Ratio::new(1, 1) - Ratio::new(4, km1 * km1)
}

/// One row of the convergence table for T's density against its limit.
#[derive(Clone, Debug)]
pub struct DensityRow {
    pub n: usize,
    /// |T| for the strict instance at this n.
    pub edges_t: u64,
    /// C(n,3).
    pub total_triples: u64,
    /// |T| / C(n,3).
    pub density_t: f64,
    /// The limit 1 - 4/(k-1)^2 as a float.
    pub limit: f64,
    /// limit - density; negative while the finite density overshoots.
    pub gap: f64,
}

/// Builds strict instances for each n and tabulates T's density against the
/// k-limit. Errors from any build (divisibility, range) propagate.
pub fn density_table(k: usize, n_list: &[usize]) -> Result<Vec<DensityRow>, TuranError> {
    if k < 4 {
        return Err(TuranError::InvalidArity {
            k,
            op: "density_table",
            need: "k >= 4",
        });
    }
    let limit = density_limit(k).to_f64().expect("small rational fits f64");
    n_list
        .iter()
        .map(|&n| {
            let inst = build_turan(n, k, BuildMode::Strict)?;
            let edges_t = inst.t().edge_count() as u64;
            let total_triples = triple_count(n) as u64;
            let density_t = edges_t as f64 / total_triples as f64;
            Ok(DensityRow {
                n,
                edges_t,
                total_triples,
                density_t,
                limit,
                gap: limit - density_t,
            })
        })
        .collect()
}
