//! Parameter sweeps over schemes and seeds.

use std::fmt;
use std::str::FromStr;

use maisac_core::ScenarioConfig;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::run::{run_parallel, run_scheme, RunConfig, RunRecord};
use crate::scheme::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    AntennaCount,
    UserCount,
    /// Threshold in dB.
    SensingThreshold,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::AntennaCount => "antenna_count",
            SweepParam::UserCount => "user_count",
            SweepParam::SensingThreshold => "sensing_threshold",
        }
    }

    pub fn apply(self, config: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let mut c = config.clone();
        let count = || {
            if value >= 1.0 && value.fract() == 0.0 {
                Ok(value as usize)
            } else {
                Err(HarnessError::Invalid(format!("{} must be a positive integer, got {value}", self.name())))
            }
        };
        match self {
            SweepParam::AntennaCount => c.antenna_count = count()?,
            SweepParam::UserCount => c.comm_user_count = count()?,
            SweepParam::SensingThreshold => c.sensing_threshold_db = value,
        }
        c.validate()?;
        Ok(c)
    }

    /// The swept value as recorded in a run.
    pub fn value_of(self, r: &RunRecord) -> f64 {
        match self {
            SweepParam::AntennaCount => r.antenna_count as f64,
            SweepParam::UserCount => r.user_count as f64,
            SweepParam::SensingThreshold => r.sensing_threshold_db,
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        [SweepParam::AntennaCount, SweepParam::UserCount, SweepParam::SensingThreshold]
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| {
                HarnessError::Invalid(format!(
                    "unknown sweep parameter `{s}` (expected antenna_count, user_count or sensing_threshold)"
                ))
            })
    }
}

/// One cell of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepJob {
    pub value: f64,
    pub scheme: Scheme,
    pub seed: u64,
}

/// Grid in row order: ascending value, then scheme order as given, then seed.
pub fn sweep_jobs(values: &[f64], schemes: &[Scheme], seeds: &[u64]) -> Result<Vec<SweepJob>> {
    if values.is_empty() {
        return Err(HarnessError::Invalid("sweep needs at least one value".into()));
    }
    if schemes.is_empty() || seeds.is_empty() {
        return Err(HarnessError::Invalid("sweep needs at least one scheme and one seed".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(HarnessError::Invalid("sweep values must be finite".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut jobs = Vec::with_capacity(sorted.len() * schemes.len() * seeds.len());
    for &value in &sorted {
        for &scheme in schemes {
            for &seed in seeds {
                jobs.push(SweepJob { value, scheme, seed });
            }
        }
    }
    Ok(jobs)
}

/// Runs the Cartesian product of values, schemes and seeds.
pub fn sweep(
    param: SweepParam,
    values: &[f64],
    schemes: &[Scheme],
    seeds: &[u64],
    base: &RunConfig,
    workers: usize,
) -> Result<Vec<RunRecord>> {
    let jobs = sweep_jobs(values, schemes, seeds)?;
    let configs = jobs
        .iter()
        .map(|j| {
            Ok(RunConfig {
                scenario: param.apply(&base.scenario, j.value)?,
                ..base.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let indexed: Vec<usize> = (0..jobs.len()).collect();
    run_parallel(&indexed, workers, |&i| run_scheme(jobs[i].scheme, &configs[i], jobs[i].seed).map(|r| r.0))
        .into_iter()
        .collect()
}

/// Mean and sample standard deviation across seeds of one (value, scheme) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub parameter: String,
    pub value: f64,
    pub scheme: Scheme,
    pub runs: usize,
    pub mean_sum_rate_bps: f64,
    pub std_sum_rate_bps: f64,
    pub mean_satisfaction: f64,
    pub std_satisfaction: f64,
}

pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups records by (value, scheme) in first-appearance order.
pub fn summarize(param: SweepParam, records: &[RunRecord]) -> Vec<SweepSummary> {
    let mut keys: Vec<(f64, Scheme)> = Vec::new();
    for r in records {
        let k = (param.value_of(r), r.scheme);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(value, scheme)| {
            let group: Vec<&RunRecord> = records
                .iter()
                .filter(|r| param.value_of(r) == value && r.scheme == scheme)
                .collect();
            let rates: Vec<f64> = group.iter().map(|r| r.mean_sum_rate_bps).collect();
            let sat: Vec<f64> = group.iter().map(|r| r.sensing_satisfaction).collect();
            let (mean_sum_rate_bps, std_sum_rate_bps) = mean_std(&rates);
            let (mean_satisfaction, std_satisfaction) = mean_std(&sat);
            SweepSummary {
                parameter: param.name().to_string(),
                value,
                scheme,
                runs: group.len(),
                mean_sum_rate_bps,
                std_sum_rate_bps,
                mean_satisfaction,
                std_satisfaction,
            }
        })
        .collect()
}
