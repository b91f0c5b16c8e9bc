//! Optional parallelism. `PLOVLAB_THREADS` caps the worker count; results
//! are independent of it because every parallel reduction collects in input
//! order before summing (exact arithmetic has no rounding to reorder).

use std::sync::Once;

static INIT: Once = Once::new();

/// Size the global thread pool from `PLOVLAB_THREADS` once. Later calls and
/// unparseable values fall back to the rayon default.
pub fn init_threads() {
    INIT.call_once(|| {
        if let Some(n) = std::env::var("PLOVLAB_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            // Ignore failure: a pool may already exist (e.g. under a test
            // harness); determinism does not depend on the pool size.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    });
}
