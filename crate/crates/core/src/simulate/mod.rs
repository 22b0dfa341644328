//! Synthetic urban scenarios and the replication study built on them.

mod scenario;
mod study;

pub use scenario::{sample_scenario, ScenarioConfig, ScenarioKind, NON_URBAN, URBAN};
pub use study::{
    run_study, stream_rng, ReferenceInterval, SeriesSummary, StudyConfig, StudySummary,
};
