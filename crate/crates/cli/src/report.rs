//! JSON report and per-trial CSV.

use std::io::Write;

use serde::{Serialize, Serializer};

/// Residuals are written as JSON numbers; an infinite residual (from a NaN or an
/// overflow) is written as the string `"inf"`.
fn residual<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) if x.is_finite() => s.serialize_f64(*x),
        Some(_) => s.serialize_str("inf"),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    /// Draws used, including rejected ones.
    pub attempts: usize,
    #[serde(serialize_with = "residual")]
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteRecord {
    pub id: String,
    pub identity: String,
    pub trials: usize,
    #[serde(serialize_with = "residual")]
    pub max_residual: Option<f64>,
    pub worst_trial: Option<usize>,
    pub tolerance: f64,
    pub pass: bool,
    /// Set when the suite could not complete (sampling exhaustion or an evaluation error).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_time_ms: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteRecord>,
}

impl Report {
    pub fn new(seed: u64, suites: Vec<SuiteRecord>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Self { seed, pass, suites }
    }

    pub fn has_errors(&self) -> bool {
        self.suites.iter().any(|s| s.error.is_some())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["suite", "trial", "attempts", "residual"])?;
        for s in &self.suites {
            for r in &s.records {
                let res = match r.residual {
                    Some(x) if x.is_finite() => format!("{x:e}"),
                    Some(_) => "inf".to_string(),
                    None => String::new(),
                };
                w.write_record([
                    s.id.clone(),
                    r.trial.to_string(),
                    r.attempts.to_string(),
                    res,
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
