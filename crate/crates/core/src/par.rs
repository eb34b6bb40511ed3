//! Runtime switch between the rayon-backed and sequential execution paths.
//!
//! All helpers return results in chunk order, so reductions done by callers
//! are deterministic whichever path runs.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Splits `[0, total)` into chunks of `chunk` and maps each `(start, end)`.
pub fn chunked<T, F>(par: Parallelism, total: u64, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let nchunks = total.div_ceil(chunk);
    let run = |c: u64| {
        let start = c * chunk;
        f(start, (start + chunk).min(total))
    };
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return (0..nchunks).into_par_iter().map(run).collect();
    }
    let _ = par;
    (0..nchunks).map(run).collect()
}

/// Maps every item, preserving order.
pub fn map_items<T, U, F>(par: Parallelism, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}

/// Chunk size giving a few chunks per worker.
pub fn suggested_chunk(total: u64) -> u64 {
    #[cfg(feature = "parallel")]
    let workers = rayon::current_num_threads() as u64;
    #[cfg(not(feature = "parallel"))]
    let workers = 1u64;
    (total / (workers * 8).max(1)).clamp(1, 1 << 16)
}
