//! Parallel execution of independent jobs.
//!
//! With the `parallel` feature (default) jobs run on a private rayon pool
//! whose size is capped by the `GGQ_THREADS` environment variable. Without
//! the feature everything runs on the calling thread. Results come back in
//! job order in both cases, so downstream output is identical.

#[cfg(feature = "parallel")]
use std::sync::OnceLock;

#[cfg(feature = "parallel")]
static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

/// Thread cap from `GGQ_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("GGQ_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
}

#[cfg(feature = "parallel")]
fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = thread_cap() {
            builder = builder.num_threads(n);
        }
        builder.build().expect("failed to build worker pool")
    })
}

/// Maps `f` over `0..n`, in parallel when enabled. Output index `i` holds
/// `f(i)`.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pool().install(|| (0..n).into_par_iter().map(f).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential reference path for `map_indexed`; always available, used by
/// the benchmark suite to compare against the pool.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let par = map_indexed(64, |i| i * i);
        let seq = map_indexed_seq(64, |i| i * i);
        assert_eq!(par, seq);
    }
}
