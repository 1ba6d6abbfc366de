//! Thin switch between rayon and plain iteration.
//!
//! Every data-parallel loop in the crate goes through one of these helpers.
//! With the `parallel` feature (default) they run on the current rayon pool;
//! without it they degrade to sequential iteration with identical results.
//! All helpers preserve input order, so outputs are deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when this build can actually fan work out across threads.
pub fn parallelism_available() -> bool {
    cfg!(feature = "parallel")
}

/// Runs `f` on a rayon pool with the given thread count. `None` uses the
/// default pool. Without the `parallel` feature the closure just runs
/// inline and `threads` is ignored.
#[cfg(feature = "parallel")]
pub fn with_thread_count<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("building rayon pool")
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_thread_count<T: Send>(_threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    f()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// First `Some` in index order; parallel builds still return the earliest hit.
#[cfg(feature = "parallel")]
pub(crate) fn find_map_first_indices<U, F>(n: usize, f: F) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first_indices<U, F>(n: usize, f: F) -> Option<U>
where
    F: Fn(usize) -> Option<U>,
{
    (0..n).find_map(f)
}

#[cfg(feature = "parallel")]
pub(crate) fn any_index<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..n).into_par_iter().any(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn any_index<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..n).any(f)
}
