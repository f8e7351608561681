use dampwalk::TrialRunner;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Runs trials on a rayon pool. Results come back in trial order, so the
/// reduction downstream sees the same sequence for any thread count.
pub struct ParallelRunner {
    pool: ThreadPool,
}

impl ParallelRunner {
    /// `threads = 0` lets rayon pick (one per core).
    pub fn new(threads: usize) -> Result<Self, ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(ParallelRunner { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl TrialRunner for ParallelRunner {
    fn run(&self, trials: u64, trial: &(dyn Fn(u64) -> f64 + Sync)) -> Vec<f64> {
        self.pool.install(|| (0..trials).into_par_iter().map(trial).collect())
    }
}
