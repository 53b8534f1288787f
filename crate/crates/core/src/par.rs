//! Data-parallel primitives with a sequential fallback.
//!
//! With the `parallel` feature (on by default) these run on the current rayon
//! pool. Without it, or when [`Execution::Sequential`] is requested, they run
//! on the calling thread. Both paths return identical results: searches
//! report the lowest matching index, maps preserve input order.

/// How a data-parallel loop should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run anything in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    #[inline]
    fn use_parallel(self, len: usize) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel && len > 1
    }
}

/// Lowest index `i` in `items` for which `pred` returns `Some`, with its value.
pub fn find_first_map<T, R, F>(exec: Execution, items: &[T], pred: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    if exec.use_parallel(items.len()) {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            return items
                .par_iter()
                .enumerate()
                .filter_map(|(i, item)| pred(item).map(|r| (i, r)))
                .find_first(|_| true);
        }
    }
    items
        .iter()
        .enumerate()
        .find_map(|(i, item)| pred(item).map(|r| (i, r)))
}

/// Order-preserving map.
pub fn map_collect<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if exec.use_parallel(items.len()) {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Number of worker threads the parallel path would use.
pub fn worker_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
