//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the [`Exec::Parallel`] strategy runs
//! on the rayon global pool (or the pool installed by the caller). Without the
//! feature every strategy runs sequentially. Results are always returned in
//! input order, so output never depends on the strategy.

/// Execution strategy for the data-parallel loops in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when this strategy actually runs in parallel in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Indices `i < len` with `keep(i)`, in increasing order.
pub fn filter_indices<F>(exec: Exec, len: usize, keep: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().filter(|&i| keep(i)).collect();
    }
    let _ = exec;
    (0..len).filter(|&i| keep(i)).collect()
}

/// `f` applied to every item, preserving order.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// `f` applied to `0..len`, preserving order.
pub fn map_range<R, F>(exec: Exec, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Runs `f` with at most `workers` threads when a count is given.
pub fn with_workers<R: Send, F: FnOnce() -> R + Send>(workers: Option<usize>, f: F) -> R {
    #[cfg(feature = "parallel")]
    if let Some(w) = workers {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
            return pool.install(f);
        }
    }
    let _ = workers;
    f()
}
