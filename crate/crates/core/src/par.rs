//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it every helper runs sequentially. [`sequential`] forces the
//! sequential path for the duration of a closure on the current thread, which
//! is how the benches compare both paths from one binary.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Run `f` with parallel helpers disabled on this thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let prev = FORCE_SEQUENTIAL.with(|c| c.replace(true));
    let out = f();
    FORCE_SEQUENTIAL.with(|c| c.set(prev));
    out
}

#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
fn forced_sequential() -> bool {
    FORCE_SEQUENTIAL.with(|c| c.get())
}

/// Order-preserving map.
pub fn map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !forced_sequential() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}

/// True iff `pred` holds for every item.
pub fn all<T, F>(items: Vec<T>, pred: F) -> bool
where
    T: Send,
    F: Fn(T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !forced_sequential() {
            use rayon::prelude::*;
            return items.into_par_iter().all(pred);
        }
    }
    items.into_iter().all(pred)
}

/// Cap the global pool. `0` leaves rayon's default. No-op without the
/// `parallel` feature.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            // a second call (pool already built) is harmless
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
