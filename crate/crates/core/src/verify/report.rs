//! Running suites, report documents and replay.

use std::time::{Duration, Instant};

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::ElementDocument;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

use super::checks::{run_check, CheckOutcome};
use super::rng::TrialRng;
use super::sampling::Sampler;
use super::suites::{find_suite, suite_names, SuiteDef, SUITES};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_COEFFICIENT_BOUND: i64 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub suite: String,
    pub level: u32,
    pub trials: u64,
    pub seed: u64,
    pub coefficient_bound: i64,
    /// Fraction of dense coefficients forced to zero, as an exact rational in `[0, 1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparsity: Option<String>,
}

impl SuiteSpec {
    pub fn new(suite: &str, level: u32, trials: u64, seed: u64) -> Self {
        SuiteSpec {
            suite: suite.to_string(),
            level,
            trials,
            seed,
            coefficient_bound: DEFAULT_COEFFICIENT_BOUND,
            sparsity: None,
        }
    }

    fn sampler(&self) -> Result<Sampler> {
        if self.coefficient_bound < 1 {
            return Err(Error::input("coefficient bound must be at least 1"));
        }
        let mut sampler = Sampler::new(self.coefficient_bound);
        if let Some(text) = &self.sparsity {
            let q = parse_rational(text)?;
            if q < Rational::zero() || q >= Rational::from_integer(1.into()) {
                return Err(Error::input(format!("sparsity must lie in [0, 1), got {text}")));
            }
            let num = q.numer().to_u64();
            let den = q.denom().to_u64();
            let (Some(num), Some(den)) = (num, den) else {
                return Err(Error::input(format!("sparsity {text} is too finely divided")));
            };
            sampler.density = Some((den - num, den));
        }
        Ok(sampler)
    }

    fn suite_def(&self) -> Result<&'static SuiteDef> {
        let def = find_suite(&self.suite).ok_or_else(|| Error::UnknownSuite {
            name: self.suite.clone(),
            available: suite_names().join(", "),
        })?;
        if !def.levels.contains(&self.level) {
            return Err(Error::input(format!(
                "suite {} supports levels {}..={}, got {}",
                def.name,
                def.levels.start(),
                def.levels.end(),
                self.level
            )));
        }
        crate::element::check_level(self.level)?;
        Ok(def)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: String,
    pub trial: u64,
    pub inputs: Vec<ElementDocument>,
    pub expected: String,
    pub actual: String,
}

impl FailureRecord {
    pub fn input_elements(&self) -> Result<Vec<Element>> {
        self.inputs.iter().map(ElementDocument::to_element).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub level: u32,
    pub trials: u64,
    pub seed: u64,
    pub coefficient_bound: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparsity: Option<String>,
    pub checks_run: u64,
    pub passed: u64,
    pub failed: u64,
    pub failures: Vec<FailureRecord>,
    pub tool_version: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn spec(&self) -> SuiteSpec {
        SuiteSpec {
            suite: self.suite.clone(),
            level: self.level,
            trials: self.trials,
            seed: self.seed,
            coefficient_bound: self.coefficient_bound,
            sparsity: self.sparsity.clone(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The serialized report; identical for identical specs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One standalone replay document per failure.
    pub fn replay_documents(&self) -> Vec<ReplayDocument> {
        self.failures
            .iter()
            .map(|f| ReplayDocument {
                suite: self.suite.clone(),
                level: self.level,
                seed: self.seed,
                coefficient_bound: self.coefficient_bound,
                failure: f.clone(),
                tool_version: self.tool_version.clone(),
            })
            .collect()
    }
}

fn outcome_of(check: &str, inputs: &[Element]) -> CheckOutcome {
    run_check(check, inputs).unwrap_or_else(|e| CheckOutcome {
        passed: false,
        expected: "inputs satisfying the check's hypotheses".to_string(),
        actual: format!("error: {e}"),
    })
}

fn run_trial(def: &SuiteDef, sampler: &Sampler, spec: &SuiteSpec, trial: u64) -> (u64, Vec<FailureRecord>) {
    let mut rng = TrialRng::new(spec.seed, trial);
    let cases = def.cases(sampler, &mut rng, spec.level);
    let mut failures = Vec::new();
    for c in &cases {
        let out = outcome_of(c.check, &c.inputs);
        if !out.passed {
            failures.push(FailureRecord {
                check: c.check.to_string(),
                trial,
                inputs: c.inputs.iter().map(ElementDocument::from_element).collect(),
                expected: out.expected,
                actual: out.actual,
            });
        }
    }
    (cases.len() as u64, failures)
}

/// Runs a suite on the global thread pool.
pub fn run_suite(spec: &SuiteSpec) -> Result<VerificationReport> {
    run_suite_with_jobs(spec, None)
}

/// Runs a suite on `jobs` threads (all cores when `None`). Trials run in
/// parallel and are assembled in trial order.
pub fn run_suite_with_jobs(spec: &SuiteSpec, jobs: Option<usize>) -> Result<VerificationReport> {
    let def = spec.suite_def()?;
    let sampler = spec.sampler()?;
    let start = Instant::now();
    let work = || -> Vec<(u64, Vec<FailureRecord>)> {
        (0..spec.trials)
            .into_par_iter()
            .map(|t| run_trial(def, &sampler, spec, t))
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::input(format!("cannot start {n} worker threads: {e}")))?
            .install(work),
        None => work(),
    };
    let checks_run = results.iter().map(|(n, _)| n).sum::<u64>();
    let failures: Vec<FailureRecord> = results.into_iter().flat_map(|(_, f)| f).collect();
    let failed = failures.len() as u64;
    Ok(VerificationReport {
        suite: spec.suite.clone(),
        level: spec.level,
        trials: spec.trials,
        seed: spec.seed,
        coefficient_bound: spec.coefficient_bound,
        sparsity: spec.sparsity.clone(),
        checks_run,
        passed: checks_run - failed,
        failed,
        failures,
        tool_version: TOOL_VERSION.to_string(),
        elapsed: start.elapsed(),
    })
}

/// Every suite included in `all` that supports `level`, in registry order.
pub fn run_all(template: &SuiteSpec, jobs: Option<usize>) -> Result<Vec<VerificationReport>> {
    crate::element::check_level(template.level)?;
    let mut reports = Vec::new();
    for def in SUITES.iter().filter(|d| d.in_all && d.levels.contains(&template.level)) {
        let spec = SuiteSpec {
            suite: def.name.to_string(),
            ..template.clone()
        };
        reports.push(run_suite_with_jobs(&spec, jobs)?);
    }
    Ok(reports)
}

/// A single failure with enough context to re-run it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayDocument {
    pub suite: String,
    pub level: u32,
    pub seed: u64,
    pub coefficient_bound: i64,
    pub failure: FailureRecord,
    pub tool_version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayOutcome {
    pub check: String,
    pub trial: u64,
    /// Whether the check failed again with the recorded expected and actual values.
    pub reproduced: bool,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

/// Re-runs one recorded failure from its serialized inputs alone.
pub fn replay(record: &FailureRecord) -> Result<ReplayOutcome> {
    super::checks::lookup(&record.check)?;
    let inputs = record.input_elements()?;
    let out = outcome_of(&record.check, &inputs);
    Ok(ReplayOutcome {
        check: record.check.clone(),
        trial: record.trial,
        reproduced: !out.passed && out.expected == record.expected && out.actual == record.actual,
        passed: out.passed,
        expected: out.expected,
        actual: out.actual,
    })
}

/// Failure records from a replay document, a full report, a list of
/// reports, or a bare failure record.
pub fn failures_from_json(text: &str) -> Result<Vec<FailureRecord>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        Error::input(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    let parse = |v: serde_json::Value| -> Result<Vec<FailureRecord>> {
        if v.get("failure").is_some() {
            let doc: ReplayDocument = serde_json::from_value(v).map_err(json_err)?;
            Ok(vec![doc.failure])
        } else if v.get("failures").is_some() {
            let report: VerificationReport = serde_json::from_value(v).map_err(json_err)?;
            Ok(report.failures)
        } else {
            Ok(vec![serde_json::from_value(v).map_err(json_err)?])
        }
    };
    match value {
        serde_json::Value::Array(items) => {
            let mut all = Vec::new();
            for v in items {
                all.extend(parse(v)?);
            }
            Ok(all)
        }
        v => parse(v),
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::input(format!("not a replay document, report or failure record: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_lists_available() {
        let err = run_suite(&SuiteSpec::new("nope", 4, 1, 0)).unwrap_err();
        match err {
            Error::UnknownSuite { available, .. } => assert!(available.contains("ann_mod4")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn level_outside_range_is_rejected() {
        assert!(run_suite(&SuiteSpec::new("main_a5", 4, 1, 0)).is_err());
    }

    #[test]
    fn report_is_deterministic_across_thread_counts() {
        let spec = SuiteSpec::new("ann_mod4", 4, 12, 42);
        let one = run_suite_with_jobs(&spec, Some(1)).unwrap().to_json();
        let many = run_suite_with_jobs(&spec, Some(4)).unwrap().to_json();
        assert_eq!(one, many);
    }

    #[test]
    fn injected_failure_replays() {
        let report = run_suite(&SuiteSpec::new("injected_failure", 4, 3, 9)).unwrap();
        assert_eq!(report.failed, 3);
        for doc in report.replay_documents() {
            let text = serde_json::to_string(&doc).unwrap();
            let records = failures_from_json(&text).unwrap();
            let out = replay(&records[0]).unwrap();
            assert!(out.reproduced);
        }
        let from_report = failures_from_json(&report.to_json()).unwrap();
        assert_eq!(from_report, report.failures);
    }

    #[test]
    fn sparsity_thins_inputs() {
        let mut spec = SuiteSpec::new("ann_mod4", 4, 4, 1);
        spec.sparsity = Some("3/4".into());
        assert!(run_suite(&spec).unwrap().all_passed());
        spec.sparsity = Some("1".into());
        assert!(run_suite(&spec).is_err());
    }
}
