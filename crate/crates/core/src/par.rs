//! Data-parallel helpers with a sequential fallback.
//!
//! Every batch loop in the crate (corpus generation, episode fan-out, swarm
//! fitness evaluation, Monte Carlo draws) goes through [`Exec`]. Output order
//! always matches input order, so results are identical whichever strategy
//! runs them.

/// Execution strategy for a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses the rayon global pool. Degrades to [`Exec::Sequential`] when the
    /// crate is built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Runs `job` inside a pool limited to `workers` threads. With one worker,
    /// or without the `parallel` feature, the job simply runs on the caller.
    pub fn with_workers<R, F>(workers: usize, job: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        #[cfg(feature = "parallel")]
        if workers > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                return pool.install(job);
            }
        }
        let _ = workers;
        job()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_on_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&items, |x| x * x + 1);
        let par = Exec::Parallel.map(&items, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(
            Exec::Sequential.map_range(50, |i| i * 3),
            Exec::Parallel.map_range(50, |i| i * 3)
        );
    }

    #[test]
    fn worker_pool_runs_job() {
        let out = Exec::with_workers(2, || Exec::Parallel.map_range(10, |i| i + 1));
        assert_eq!(out, (1..=10).collect::<Vec<_>>());
    }
}
