use std::path::PathBuf;

use clap::Args;
use serde::Deserialize;
use serde_json::json;

use spatent::simulate::{sample_scenario, stream_rng, ScenarioConfig, URBAN};

use crate::output::{read_text, CliResult, Failure, Outputs};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// A scenario object, or `{"scenarios": [...]}`.
    pub config: PathBuf,
    /// Overrides every scenario's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SimulateConfig {
    Many { scenarios: Vec<ScenarioConfig> },
    One(ScenarioConfig),
}

pub fn run(a: SimulateArgs) -> CliResult<()> {
    let text = read_text(&a.config, Failure::usage)?;
    let config: SimulateConfig = serde_json::from_str(&text).map_err(|e| {
        Failure::usage(format!(
            "{}: not a scenario config: {e}",
            a.config.display()
        ))
    })?;
    let mut scenarios = match config {
        SimulateConfig::Many { scenarios } => scenarios,
        SimulateConfig::One(s) => vec![s],
    };
    if scenarios.is_empty() {
        return Err(Failure::usage("no scenarios in config"));
    }
    if let Some(seed) = a.seed {
        for s in &mut scenarios {
            s.seed = seed;
        }
    }
    let mut labels: Vec<String> = scenarios.iter().map(ScenarioConfig::label).collect();
    labels.sort();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Failure::usage("scenario labels must be unique"));
    }
    for s in &scenarios {
        s.validate()?;
    }

    let mut out = Outputs::create(&a.out)?;
    let mut summary = Vec::new();
    for (j, s) in scenarios.iter().enumerate() {
        let grid = sample_scenario(s, &mut stream_rng(s.seed, 0, j as u64))?;
        let name = format!("{}.asc", s.label());
        out.write(&name, &grid.to_ascii())?;
        let urban = grid.values().iter().filter(|&&v| v == URBAN).count();
        summary.push(json!({
            "label": s.label(),
            "config": s,
            "urban_cells": urban,
            "file": name,
        }));
    }
    let seed = scenarios[0].seed;
    let same_seed = scenarios.iter().all(|s| s.seed == seed);
    out.finish(
        "simulate",
        vec![a.config.display().to_string()],
        json!({ "scenarios": summary }),
        same_seed.then_some(seed),
    )
}
