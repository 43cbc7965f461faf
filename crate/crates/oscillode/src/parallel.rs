//! Concurrent drivers over independent classifications and threshold
//! searches. Results always come back in input order.

use oscillode_core::thresholds::{find_a_n, find_b_n};
use oscillode_core::{classify, integrate, ClassificationResult, Error, ProblemParams, SolverConfig, ThresholdResult};
use rayon::prelude::*;

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool construction")
}

fn ordered_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if workers <= 1 {
        return items.iter().map(f).collect();
    }
    pool(workers).install(|| items.par_iter().map(f).collect())
}

pub fn par_sweep(a_values: &[f64], cfg: &SolverConfig, workers: usize) -> Vec<Result<ClassificationResult, Error>> {
    ordered_map(a_values, workers, |&a| {
        Ok(classify(&integrate(ProblemParams::new(a)?, cfg)?))
    })
}

pub fn par_find_a(ns: &[u32], cfg: &SolverConfig, width: f64, workers: usize) -> Vec<Result<ThresholdResult, Error>> {
    ordered_map(ns, workers, |&n| find_a_n(n, cfg, width))
}

pub fn par_find_b(ns: &[u32], cfg: &SolverConfig, width: f64, workers: usize) -> Vec<Result<ThresholdResult, Error>> {
    ordered_map(ns, workers, |&n| find_b_n(n, cfg, width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use oscillode_core::sweep;

    #[test]
    fn parallel_sweep_matches_sequential() {
        let a = [0.0, 2.0, -1.0, 4.0, 6.0, 8.0];
        let cfg = SolverConfig::default();
        assert_eq!(par_sweep(&a, &cfg, 3), sweep(&a, &cfg));
        assert!(par_sweep(&[], &cfg, 2).is_empty());
    }
}
