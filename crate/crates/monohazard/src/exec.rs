use monohazard_core::ResampleExecutor;
use rayon::prelude::*;

/// Runs bootstrap resamples on the current rayon pool. Results come back in
/// index order, so output matches [`monohazard_core::Sequential`] exactly.
#[derive(Debug, Clone, Copy, Default)]
pub struct RayonExecutor;

impl ResampleExecutor for RayonExecutor {
    fn map_indexed(&self, count: usize, job: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        (0..count).into_par_iter().map(job).collect()
    }
}

/// Builds a pool with `threads` workers, 0 meaning one per core.
pub fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}
