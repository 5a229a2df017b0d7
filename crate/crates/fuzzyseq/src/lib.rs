//! Formats, experiment harness and reports for `fuzzyseq-core`.

pub mod analyze;
pub mod harness;
pub mod literal;
pub mod props;
pub mod random;
pub mod report;
pub mod spec;

pub use fuzzyseq_core as core;

/// Caps the global worker pool at `FUZZYSEQ_THREADS` when set. Returns the
/// pool size in effect.
pub fn init_threads() -> usize {
    if let Some(n) = std::env::var("FUZZYSEQ_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // A pool built earlier in the process keeps its size.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    rayon::current_num_threads()
}
