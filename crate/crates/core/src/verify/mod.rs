//! Seeded property suites, failure replay and the dimension spectrum search.

pub mod checks;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod spectrum;
pub mod suites;

pub use checks::{run_check, CheckOutcome};
pub use report::{
    replay, run_all, run_suite, FailureRecord, ReplayDocument, ReplayOutcome, SuiteSpec,
    VerificationReport,
};
pub use spectrum::{spectrum_search, SpectrumResult, SpectrumSpec, Strategy, Target};
