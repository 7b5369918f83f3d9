//! Execution strategy for the data-parallel loops.
//!
//! With the `parallel` feature the work is spread over a rayon pool sized by
//! [`Exec::with_workers`]; without it, or with a single worker, every helper
//! runs the same closure sequentially. Results are always returned in input
//! order so outputs do not depend on the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
#[cfg(feature = "parallel")]
use std::sync::Arc;

/// Below this many items the helpers do not bother spawning tasks.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 64;

#[derive(Clone)]
pub struct Exec {
    workers: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Exec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Exec").field("workers", &self.workers).finish()
    }
}

impl Default for Exec {
    fn default() -> Self {
        Self::with_workers(default_workers())
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl Exec {
    pub fn sequential() -> Self {
        Exec {
            workers: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// `workers` is clamped to at least one. Without the `parallel` feature
    /// the count is recorded but ignored.
    pub fn with_workers(workers: usize) -> Self {
        let workers = workers.max(1);
        if workers == 1 {
            return Self::sequential();
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .ok()
                .map(Arc::new);
            Exec { workers, pool }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec { workers }
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn is_parallel(&self) -> bool {
        #[cfg(feature = "parallel")]
        {
            self.pool.is_some()
        }
        #[cfg(not(feature = "parallel"))]
        {
            false
        }
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            if items.len() >= PAR_THRESHOLD {
                return pool.install(|| items.par_iter().map(&f).collect());
            }
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<R, F>(&self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            if len >= 2 {
                return pool.install(|| (0..len).into_par_iter().map(&f).collect());
            }
        }
        (0..len).map(f).collect()
    }

    /// Runs `f` on each item for its side effects.
    pub fn for_each<T, F>(&self, items: &[T], f: F)
    where
        T: Sync,
        F: Fn(&T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            if items.len() >= PAR_THRESHOLD {
                pool.install(|| items.par_iter().for_each(&f));
                return;
            }
        }
        items.iter().for_each(f)
    }

    /// True if every item satisfies `pred`; stops early on failure.
    pub fn all<T, F>(&self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            if items.len() >= PAR_THRESHOLD {
                return pool.install(|| items.par_iter().all(&pred));
            }
        }
        items.iter().all(pred)
    }
}
