//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers use rayon unless parallelism has been switched
//! off at runtime; results are always returned in input order.

use std::sync::atomic::{AtomicBool, Ordering};

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces sequential execution (used by benchmarks to compare both paths).
pub fn set_sequential(on: bool) {
    SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::SeqCst)
}

/// Sets the number of worker threads; `1` runs sequentially. Only the first call can
/// size the global pool.
pub fn set_workers(n: usize) {
    set_sequential(n == 1);
    #[cfg(feature = "parallel")]
    if n > 1 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Order-preserving map.
pub fn map<T: Sync, U: Send, G: Fn(&T) -> U + Sync + Send>(items: &[T], g: G) -> Vec<U> {
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(g).collect();
    }
    items.iter().map(g).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<U: Send, G: Fn(u64) -> U + Sync + Send>(range: std::ops::Range<u64>, g: G) -> Vec<U> {
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(g).collect();
    }
    range.map(g).collect()
}
