//! Batch classification of random Z-tensors.
//!
//! Each trial `k` generates a tensor from seed `seed + k` and classifies it.
//! Trials run on a dedicated thread pool; results are collected in trial
//! order and counted with integer sums, so counts do not depend on the
//! number of workers or on scheduling.

use std::time::Instant;

use mtensor::{classify_m_tensor, procedure1, GenSpec, IterationSettings, MTensorStatus};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub order: usize,
    pub dim: usize,
    pub a_d: f64,
    pub trials: usize,
    pub seed: u64,
    pub settings: IterationSettings,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    #[serde(serialize_with = "status_str")]
    pub status: MTensorStatus,
    pub tau: f64,
    pub upper_bound: f64,
    pub iterations: usize,
    pub seconds: f64,
}

/// One row of the results table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub a_d: f64,
    pub trials: usize,
    pub yes_count: usize,
    pub no_count: usize,
    pub indeterminate_count: usize,
    /// Mean wall-clock seconds per classification, generation excluded.
    pub avg_seconds: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub row: BenchRow,
    pub records: Vec<TrialRecord>,
}

fn status_str<S: serde::Serializer>(status: &MTensorStatus, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(crate::report::status_label(*status))
}

pub fn run_bench(config: &BenchConfig) -> anyhow::Result<BenchOutcome> {
    anyhow::ensure!(config.trials >= 1, "trials must be at least 1");
    anyhow::ensure!(config.workers >= 1, "workers must be at least 1");
    config.settings.validate()?;
    let base = GenSpec::new(config.order, config.dim, config.a_d, config.seed)?;

    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build()?;
    let records = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|k| {
                let spec = base.trial(k as u64);
                let t = procedure1(&spec)?;
                let start = Instant::now();
                let v = classify_m_tensor(&t, &config.settings)?;
                let seconds = start.elapsed().as_secs_f64();
                Ok(TrialRecord {
                    trial: k,
                    seed: spec.seed,
                    status: v.status,
                    tau: v.tau,
                    upper_bound: v.upper_bound,
                    iterations: v.spectral.iterations,
                    seconds,
                })
            })
            .collect::<Result<Vec<_>, mtensor::Error>>()
    })?;

    let count = |s| records.iter().filter(|r| r.status == s).count();
    let row = BenchRow {
        m: config.order,
        n: config.dim,
        a_d: config.a_d,
        trials: config.trials,
        yes_count: count(MTensorStatus::MTensor),
        no_count: count(MTensorStatus::NotMTensor),
        indeterminate_count: count(MTensorStatus::Indeterminate),
        avg_seconds: records.iter().map(|r| r.seconds).sum::<f64>() / config.trials as f64,
        seed: config.seed,
    };
    Ok(BenchOutcome { row, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(workers: usize) -> BenchConfig {
        BenchConfig {
            order: 3,
            dim: 4,
            a_d: 5.0,
            trials: 12,
            seed: 99,
            settings: IterationSettings::default(),
            workers,
        }
    }

    #[test]
    fn counts_add_up() {
        let out = run_bench(&config(2)).unwrap();
        let r = &out.row;
        assert_eq!(r.yes_count + r.no_count + r.indeterminate_count, r.trials);
        assert_eq!(out.records.len(), 12);
        assert!(out
            .records
            .iter()
            .enumerate()
            .all(|(k, rec)| rec.trial == k && rec.seed == 99 + k as u64));
    }

    #[test]
    fn worker_count_does_not_change_verdicts() {
        let a = run_bench(&config(1)).unwrap();
        let b = run_bench(&config(3)).unwrap();
        let strip = |o: &BenchOutcome| {
            o.records
                .iter()
                .map(|r| (r.status, r.tau.to_bits()))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn rejects_zero_trials() {
        let mut c = config(1);
        c.trials = 0;
        assert!(run_bench(&c).is_err());
    }
}
