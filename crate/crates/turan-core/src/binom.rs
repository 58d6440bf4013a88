//! Exact binomial coefficients over the supported vertex range.

use std::sync::OnceLock;

/// Largest vertex count accepted anywhere in this crate.
///
/// Pascal's triangle is tabulated exactly in `u128` up to this row;
/// C(128, 64) ~ 2.4e37 still fits with headroom.
pub const MAX_VERTICES: usize = 128;

const DIM: usize = MAX_VERTICES + 1;

static TABLE: OnceLock<Vec<u128>> = OnceLock::new();

fn table() -> &'static [u128] {
    TABLE.get_or_init(|| {
        let mut t = vec![0u128; DIM * DIM];
        for n in 0..DIM {
            t[n * DIM] = 1;
            for k in 1..=n {
                let up = t[(n - 1) * DIM + k - 1];
                let left = if k < n { t[(n - 1) * DIM + k] } else { 0 };
                t[n * DIM + k] = up + left;
            }
        }
        t
    })
}

/// C(n, k), exactly; 0 when k > n.
///
/// Panics when n exceeds [`MAX_VERTICES`]; every public type validates its
/// vertex count first, so a panic here is a crate-internal bug.
pub fn choose(n: usize, k: usize) -> u128 {
    assert!(
        n <= MAX_VERTICES,
        "binomial table covers n <= {MAX_VERTICES}, got {n}"
    );
    if k > n {
        return 0;
    }
    table()[n * DIM + k]
}

/// C(n, 3) as an index-sized integer (fits usize for all supported n).
pub fn triple_count(n: usize) -> usize {
    choose(n, 3) as usize
}
