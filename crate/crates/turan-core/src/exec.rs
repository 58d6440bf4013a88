//! Deterministic chunked execution over index ranges.
//!
//! Every data-parallel operation in this crate splits its index space into
//! fixed-size chunks (compile-time constants, independent of thread count),
//! evaluates chunks either sequentially or on the rayon pool, and folds the
//! chunk results in chunk order. Both lanes share the identical chunk
//! grouping, so outputs are bit-identical whether the work ran on one thread,
//! many threads, or a build without the `parallel` feature.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Serializes tests that toggle the global lane flag, so the parallel test
/// runner cannot interleave two of them.
#[cfg(test)]
pub(crate) static LANE_LOCK: std::sync::Mutex<()> = std::sync::Mutex::new(());

#[cfg(test)]
pub(crate) fn lane_guard() -> std::sync::MutexGuard<'static, ()> {
    LANE_LOCK.lock().unwrap_or_else(|e| e.into_inner())
}

/// Routes all chunked work through the sequential lane at runtime, even in a
/// `parallel` build. Used by `--threads 1` and the lane-comparison benches.
pub fn force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn sequential_forced() -> bool {
    FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

fn chunk_ranges(total: u64, chunk: u64) -> Vec<Range<u64>> {
    assert!(chunk > 0);
    let mut ranges = Vec::with_capacity(total.div_ceil(chunk) as usize);
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        ranges.push(start..end);
        start = end;
    }
    ranges
}

/// Evaluates one value per chunk and returns them in chunk order.
pub fn map_chunks<P, F>(total: u64, chunk: u64, eval: F) -> Vec<P>
where
    P: Send,
    F: Fn(Range<u64>) -> P + Sync + Send,
{
    let ranges = chunk_ranges(total, chunk);
    #[cfg(feature = "parallel")]
    if !sequential_forced() {
        use rayon::prelude::*;
        return ranges.into_par_iter().map(eval).collect();
    }
    ranges.into_iter().map(eval).collect()
}

/// Chunked sum: per-chunk partial sums folded left-to-right in chunk order.
pub fn sum_chunks<F>(total: u64, chunk: u64, chunk_sum: F) -> f64
where
    F: Fn(Range<u64>) -> f64 + Sync + Send,
{
    map_chunks(total, chunk, chunk_sum).into_iter().sum()
}

/// Chunked vector accumulation: each chunk fills its own buffer of length
/// `len`; buffers are added into the result in chunk order.
pub fn accumulate_chunks<F>(total: u64, chunk: u64, len: usize, fill: F) -> Vec<f64>
where
    F: Fn(Range<u64>, &mut [f64]) + Sync + Send,
{
    let bufs = map_chunks(total, chunk, |range| {
        let mut buf = vec![0.0; len];
        fill(range, &mut buf);
        buf
    });
    let mut acc = vec![0.0; len];
    for buf in bufs {
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a += b;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_ranges_cover_exactly() {
        let ranges = chunk_ranges(10, 4);
        assert_eq!(ranges, vec![0..4, 4..8, 8..10]);
        assert!(chunk_ranges(0, 4).is_empty());
    }

    #[test]
    fn lanes_agree_bitwise() {
        let _guard = lane_guard();
        // Sum of values whose magnitudes differ wildly, so any reordering
        // of the reduction would show up in the low bits.
        let term = |i: u64| ((i * 2654435761) % 1000) as f64 * (1.0 + 1e-14 * i as f64);
        let chunk_sum = |r: Range<u64>| r.map(term).sum::<f64>();

        force_sequential(true);
        let seq = sum_chunks(100_000, 512, chunk_sum);
        force_sequential(false);
        let par = sum_chunks(100_000, 512, chunk_sum);
        assert_eq!(seq.to_bits(), par.to_bits());

        force_sequential(true);
        let seq_acc = accumulate_chunks(10_000, 256, 8, |r, buf| {
            for i in r {
                buf[(i % 8) as usize] += term(i);
            }
        });
        force_sequential(false);
        let par_acc = accumulate_chunks(10_000, 256, 8, |r, buf| {
            for i in r {
                buf[(i % 8) as usize] += term(i);
            }
        });
        for (a, b) in seq_acc.iter().zip(&par_acc) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn map_chunks_preserves_order() {
        let out = map_chunks(17, 5, |r| r.start);
        assert_eq!(out, vec![0, 5, 10, 15]);
    }
}
