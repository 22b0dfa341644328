//! Seeded replication study: every measure on every scenario, replicated.
//!
//! Each replicate draws from its own ChaCha stream, selected by
//! `(replicate, purpose)` on a generator keyed by the master seed, so the
//! outcome does not depend on how replicates are scheduled across threads.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classic::{batty_entropy, kc_entropy, shannon_entropy, Neighbourhood, Smoothing};
use crate::cooccurrence::{
    distance_breaks_fixed, distance_breaks_percentile, entropy_decomposition, proportional_terms,
    OffsetCooccurrence,
};
use crate::error::{invalid, Result};
use crate::lattice::CategoricalGrid;
use crate::partitions::{
    annuli_partition, centroid_distance_percentiles, voronoi_partition, AreaPartition,
};
use crate::simulate::scenario::{sample_scenario, ScenarioConfig, ScenarioKind, URBAN};
use crate::stats;

/// Purpose tag of the stream used for the Voronoi sites of a replicate.
const VORONOI_STREAM: u64 = u32::MAX as u64;

/// Independent generator for `(index, purpose)` under a master seed.
pub fn stream_rng(master_seed: u64, index: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((index << 32) | (purpose & 0xFFFF_FFFF));
    rng
}

fn default_scenarios() -> Vec<ScenarioConfig> {
    ScenarioKind::ALL
        .into_iter()
        .map(ScenarioConfig::new)
        .collect()
}
fn default_replicates() -> usize {
    100
}
fn default_voronoi_areas() -> usize {
    20
}
fn default_rings() -> usize {
    5
}
fn default_percentiles() -> Vec<f64> {
    vec![0.05, 0.25, 0.5]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    #[serde(default = "default_scenarios")]
    pub scenarios: Vec<ScenarioConfig>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_voronoi_areas")]
    pub voronoi_areas: usize,
    #[serde(default = "default_rings")]
    pub rings: usize,
    /// Percentiles of area-centroid distances used as neighbourhood distances
    /// for the Voronoi partition.
    #[serde(default = "default_percentiles")]
    pub kc_percentiles: Vec<f64>,
    /// Percentiles of pixel-pair distances used as the option-2 breaks.
    #[serde(default = "default_percentiles")]
    pub break_percentiles: Vec<f64>,
    #[serde(default)]
    pub smoothing: Smoothing,
    /// Reuse replicate 0's Voronoi sites for every replicate.
    #[serde(default)]
    pub fixed_voronoi: bool,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            scenarios: default_scenarios(),
            replicates: default_replicates(),
            seed: 0,
            voronoi_areas: default_voronoi_areas(),
            rings: default_rings(),
            kc_percentiles: default_percentiles(),
            break_percentiles: default_percentiles(),
            smoothing: Smoothing::Average,
            fixed_voronoi: false,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 2 {
            return Err(invalid(format!(
                "a study needs at least 2 replicates, got {}",
                self.replicates
            )));
        }
        if self.scenarios.is_empty() {
            return Err(invalid("a study needs at least one scenario"));
        }
        let first = &self.scenarios[0];
        for s in &self.scenarios {
            s.validate()?;
            if (s.nrows, s.ncols) != (first.nrows, first.ncols)
                || s.window_side != first.window_side
            {
                return Err(invalid("all scenarios must share one window geometry"));
            }
        }
        let mut labels: Vec<String> = self.scenarios.iter().map(ScenarioConfig::label).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("scenario labels must be unique"));
        }
        if self.voronoi_areas < 2 {
            return Err(invalid("voronoi_areas must be at least 2"));
        }
        if self.rings < 2 {
            return Err(invalid("rings must be at least 2"));
        }
        stats::check_fractions(&self.kc_percentiles, false)?;
        stats::check_fractions(&self.break_percentiles, true)?;
        Ok(())
    }
}

/// One measured value of one replicate.
#[derive(Debug, Clone, PartialEq)]
struct Observation {
    measure: &'static str,
    scenario: usize,
    option: String,
    value: f64,
}

/// The replicate distribution of one (measure, scenario, option) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSummary {
    pub measure: String,
    pub scenario: String,
    pub option: String,
    pub replicates: Vec<usize>,
    pub values: Vec<f64>,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl SeriesSummary {
    fn new(
        measure: String,
        scenario: String,
        option: String,
        replicates: Vec<usize>,
        values: Vec<f64>,
    ) -> Self {
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let q = |p| stats::quantile_linear(&sorted, p);
        Self {
            min: sorted[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: sorted[sorted.len() - 1],
            measure,
            scenario,
            option,
            replicates,
            values,
        }
    }
}

/// Per-scenario `[min, max]` of one measure and option.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceInterval {
    pub measure: String,
    pub option: String,
    pub scenario: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudySummary {
    pub config: StudyConfig,
    pub series: Vec<SeriesSummary>,
}

impl StudySummary {
    pub fn series(&self, measure: &str, scenario: &str, option: &str) -> Option<&SeriesSummary> {
        self.series
            .iter()
            .find(|s| s.measure == measure && s.scenario == scenario && s.option == option)
    }

    pub fn reference_intervals(&self) -> Vec<ReferenceInterval> {
        self.series
            .iter()
            .map(|s| ReferenceInterval {
                measure: s.measure.clone(),
                option: s.option.clone(),
                scenario: s.scenario.clone(),
                lo: s.min,
                hi: s.max,
            })
            .collect()
    }
}

/// Every measure of one replicate, for each scenario in order.
fn run_replicate(
    cfg: &StudyConfig,
    replicate: usize,
    pct_breaks: &crate::cooccurrence::DistanceClassSpec,
) -> Result<Vec<Observation>> {
    let mut out = Vec::new();
    let template = &cfg.scenarios[0];
    let geometry = sample_geometry(template)?;
    let voronoi_rep = if cfg.fixed_voronoi { 0 } else { replicate };
    let voronoi = voronoi_partition(
        &geometry,
        cfg.voronoi_areas,
        &mut stream_rng(cfg.seed, voronoi_rep as u64, VORONOI_STREAM),
    )?;
    let annuli = annuli_partition(&geometry, cfg.rings)?;
    let voronoi_nd = centroid_distance_percentiles(&voronoi, &cfg.kc_percentiles)?;
    let fixed_breaks = distance_breaks_fixed(geometry.cell_side(), geometry.max_pair_distance())?;

    for (j, scenario) in cfg.scenarios.iter().enumerate() {
        let mut rng = stream_rng(cfg.seed, replicate as u64, j as u64);
        let grid = sample_scenario(scenario, &mut rng)?;
        let mut push = |measure: &'static str, option: String, value: f64| {
            out.push(Observation {
                measure,
                scenario: j,
                option,
                value,
            })
        };

        push(
            "shannon",
            "-".into(),
            shannon_entropy(&grid.category_proportions())?,
        );

        let partitions: [(&str, &AreaPartition); 2] = [("voronoi", &voronoi), ("annuli", &annuli)];
        for (name, part) in partitions {
            let b = batty_entropy(&grid, part, URBAN)?;
            push("batty", name.into(), b.global);
            push("batty_rel", name.into(), b.relative.unwrap_or(f64::NAN));
        }

        for (i, &d) in voronoi_nd.iter().enumerate() {
            push("nd", format!("voronoi:nd{}", i + 1), d);
        }

        let mut kc_options: Vec<(String, &AreaPartition, Neighbourhood)> = voronoi_nd
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                (
                    format!("voronoi:nd{}", i + 1),
                    &voronoi,
                    Neighbourhood::Distance(d),
                )
            })
            .collect();
        kc_options.extend((1..annuli.n_areas()).map(|j| {
            (
                format!("annuli:{j}ann"),
                &annuli,
                Neighbourhood::RingSteps(j),
            )
        }));
        for (option, part, nd) in kc_options {
            let r = kc_entropy(&grid, part, URBAN, &nd, cfg.smoothing)?;
            push("kc", option.clone(), r.global);
            if let Some(rel) = r.relative {
                push("kc_rel", option, rel);
            }
        }

        let table = OffsetCooccurrence::compute(&grid)?;
        for (name, spec) in [("fixed", &fixed_breaks), ("pct", pct_breaks)] {
            let d = entropy_decomposition(&table.bin(spec)?)?;
            push("h_z", name.into(), d.h_z);
            push("mi", name.into(), d.mi);
            push("residual", name.into(), d.residual);
            let props = proportional_terms(&d);
            for (c, prop) in d.classes.iter().zip(props) {
                let option = format!("{name}:w{}", c.k);
                push("pi", option.clone(), c.pi);
                push("h", option.clone(), c.h);
                if let Some(p) = prop {
                    push("pi_prop", option.clone(), p.pi);
                    push("h_prop", option, p.h);
                }
            }
        }
    }
    out.retain(|o| o.value.is_finite());
    Ok(out)
}

/// A blank grid with the scenario's geometry.
fn sample_geometry(s: &ScenarioConfig) -> Result<CategoricalGrid> {
    CategoricalGrid::new(
        s.nrows,
        s.ncols,
        s.cell_side(),
        crate::lattice::Coordinate::new(0.0, 0.0),
        vec![0; s.n_cells()],
        2,
    )
}

/// `(measure, scenario index, option)`.
type SeriesKey = (&'static str, usize, String);

/// Runs the study on `threads` workers (the ambient rayon pool when `None`).
pub fn run_study(cfg: &StudyConfig, threads: Option<usize>) -> Result<StudySummary> {
    cfg.validate()?;
    let geometry = sample_geometry(&cfg.scenarios[0])?;
    let pct_breaks = distance_breaks_percentile(&geometry, &cfg.break_percentiles)?;

    let work = || -> Result<Vec<Vec<Observation>>> {
        (0..cfg.replicates)
            .into_par_iter()
            .map(|i| run_replicate(cfg, i, &pct_breaks))
            .collect()
    };
    let per_replicate = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| invalid(format!("cannot start {n} worker threads: {e}")))?
            .install(work)?,
        None => work()?,
    };

    // Series are ordered by first appearance, replicate vectors by replicate index.
    let labels: Vec<String> = cfg.scenarios.iter().map(ScenarioConfig::label).collect();
    let mut index: HashMap<SeriesKey, usize> = HashMap::new();
    let mut cells: Vec<(SeriesKey, Vec<usize>, Vec<f64>)> = Vec::new();
    for (rep, observations) in per_replicate.into_iter().enumerate() {
        for o in observations {
            let key = (o.measure, o.scenario, o.option);
            let slot = *index.entry(key.clone()).or_insert_with(|| {
                cells.push((key, Vec::new(), Vec::new()));
                cells.len() - 1
            });
            cells[slot].1.push(rep);
            cells[slot].2.push(o.value);
        }
    }
    let series = cells
        .into_iter()
        .map(|((measure, scenario, option), reps, values)| {
            SeriesSummary::new(
                measure.to_owned(),
                labels[scenario].clone(),
                option,
                reps,
                values,
            )
        })
        .collect();
    Ok(StudySummary {
        config: cfg.clone(),
        series,
    })
}
