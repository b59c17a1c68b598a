//! Library side of the `ellsix` command: configuration, seeded sampling, the
//! verification suites, reports and single evaluations.

use std::time::Instant;

use rayon::prelude::*;

pub mod config;
pub mod eval;
pub mod report;
pub mod sampler;
pub mod suites;

use config::Config;
use report::{Report, SuiteRecord, TrialRecord};
use sampler::{Sampler, MAX_ATTEMPTS};
use suites::{Suite, TrialError};

/// A malformed command line, config file or argument bundle (exit code 2).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Exit code for a finished report: numeric or sampling errors outrank failures.
pub fn exit_code(report: &Report) -> i32 {
    if report.has_errors() {
        EXIT_NUMERIC
    } else if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn run_trial(config: &Config, suite: &Suite, trial: usize) -> Result<TrialRecord, String> {
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut s = Sampler::new(&config.sampling, config.seed, suite.id, trial, attempt);
        match (suite.run)(&mut s, &config.caps, trial) {
            Ok(residual) => {
                return Ok(TrialRecord {
                    trial,
                    attempts: attempt + 1,
                    residual: Some(residual),
                })
            }
            Err(TrialError::Reject(why)) => last = why,
            Err(TrialError::Fatal(why)) => return Err(format!("trial {trial}: {why}")),
        }
    }
    Err(format!(
        "trial {trial}: no generic sample in {MAX_ATTEMPTS} attempts; last rejection: {last}"
    ))
}

/// Runs one suite; its trials are spread over the current rayon pool.
pub fn run_suite(config: &Config, suite: &Suite) -> SuiteRecord {
    let trials = config.trials.unwrap_or(suite.trials);
    let tolerance = config
        .tolerance
        .get(suite.id)
        .copied()
        .unwrap_or(suite.tolerance);
    let start = Instant::now();
    let outcomes: Vec<Result<TrialRecord, String>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(config, suite, t))
        .collect();
    let wall_time_ms = (start.elapsed().as_secs_f64() * 1e4).round() / 10.0;
    let mut records = Vec::with_capacity(trials);
    let mut error = None;
    for o in outcomes {
        match o {
            Ok(r) => records.push(r),
            Err(e) => {
                if error.is_none() {
                    error = Some(e);
                }
            }
        }
    }
    let mut max_residual: Option<f64> = None;
    let mut worst_trial = None;
    for r in &records {
        let v = r.residual.unwrap_or(f64::INFINITY);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if max_residual.is_none_or(|m| v > m) {
            max_residual = Some(v);
            worst_trial = Some(r.trial);
        }
    }
    let pass = error.is_none() && max_residual.is_none_or(|m| m <= tolerance);
    SuiteRecord {
        id: suite.id.to_string(),
        identity: suite.identity.to_string(),
        trials,
        max_residual,
        worst_trial,
        tolerance,
        pass,
        error,
        wall_time_ms,
        records,
    }
}

/// Runs the selected suites in canonical order. `threads = 0` uses rayon's default pool size.
pub fn run(config: &Config) -> Result<Report, UsageError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| UsageError(format!("cannot start worker pool: {e}")))?;
    let records = pool.install(|| {
        config
            .selected()
            .into_iter()
            .map(|s| run_suite(config, s))
            .collect()
    });
    Ok(Report::new(config.seed, records))
}
