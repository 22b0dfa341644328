use std::path::PathBuf;

use clap::Args;

use spatent::report::{study_csv, study_quartiles_json, study_reference_json};
use spatent::simulate::{run_study, StudyConfig};

use crate::output::{read_text, CliResult, Failure, Outputs};

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// Study config JSON; omitted fields take their defaults.
    pub config: PathBuf,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; overrides SPATENT_THREADS.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

fn threads(flag: Option<usize>) -> CliResult<Option<usize>> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("SPATENT_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| {
                Failure::usage(format!(
                    "SPATENT_THREADS must be a positive integer, got '{v}'"
                ))
            })?),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err(Failure::usage("thread count must be positive"));
    }
    Ok(n)
}

pub fn run(a: StudyArgs) -> CliResult<()> {
    let text = read_text(&a.config, Failure::usage)?;
    let mut cfg: StudyConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: not a study config: {e}", a.config.display())))?;
    if let Some(r) = a.replicates {
        cfg.replicates = r;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let threads = threads(a.threads)?;
    cfg.validate()?;

    let mut out = Outputs::create(&a.out)?;
    let summary = run_study(&cfg, threads)?;
    out.write("study.csv", &study_csv(&summary))?;
    out.write_json("quartiles.json", &study_quartiles_json(&summary))?;
    out.write_json("reference_intervals.json", &study_reference_json(&summary))?;
    let params = serde_json::to_value(&cfg).map_err(Failure::data)?;
    out.finish(
        "study",
        vec![a.config.display().to_string()],
        params,
        Some(cfg.seed),
    )
}
