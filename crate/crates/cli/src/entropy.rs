use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use spatent::classic::{batty_entropy, kc_entropy, shannon_entropy, Neighbourhood, Smoothing};
use spatent::cooccurrence::{
    distance_breaks_fixed, distance_breaks_percentile, entropy_decomposition, enumerate_pairs,
    DistanceClassSpec,
};
use spatent::lattice::{load_ascii_grid, load_csv_grid};
use spatent::partitions::{
    annuli_partition, centroid_distance_percentiles, partition_from_label_grid, voronoi_partition,
};
use spatent::report::{decomposition_csv, decomposition_json, measures_csv, MeasureRecord};
use spatent::{AreaPartition, Coordinate, LoadedGrid};

use crate::options::{parse_origin, BreaksSpec, NdSpec, PartitionSpec};
use crate::output::{read_text, CliResult, Context, Failure, Outputs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Shannon,
    Batty,
    Kc,
    Spatial,
}

impl Measure {
    fn name(self) -> &'static str {
        match self {
            Measure::Shannon => "shannon",
            Measure::Batty => "batty",
            Measure::Kc => "kc",
            Measure::Spatial => "spatial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothingArg {
    Average,
    Sum,
}

impl From<SmoothingArg> for Smoothing {
    fn from(s: SmoothingArg) -> Self {
        match s {
            SmoothingArg::Average => Smoothing::Average,
            SmoothingArg::Sum => Smoothing::Sum,
        }
    }
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// ESRI ASCII grid, or a `row,col,code` CSV (needs --cellsize).
    pub grid: PathBuf,
    #[arg(long, value_enum)]
    pub measure: Measure,
    /// voronoi:N, annuli:N or labels:PATH
    #[arg(long)]
    pub partition: Option<PartitionSpec>,
    /// Focal category as written in the input; defaults to the largest code.
    #[arg(long, allow_hyphen_values = true)]
    pub focal: Option<i64>,
    /// Neighbourhood for kc: a distance, pct:P or ann:J. Repeatable.
    #[arg(long = "nd")]
    pub nd: Vec<NdSpec>,
    /// Distance classes for spatial: fixed, pct:p1,p2,... or explicit:b1,b2,...
    #[arg(long, default_value = "fixed")]
    pub breaks: BreaksSpec,
    /// Seed for the Voronoi sites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "average")]
    pub smoothing: SmoothingArg,
    /// Cell side of CSV input.
    #[arg(long)]
    pub cellsize: Option<f64>,
    /// Lower-left corner X,Y of CSV input.
    #[arg(long, value_parser = parse_origin, allow_hyphen_values = true)]
    pub origin: Option<Coordinate>,
    #[arg(long)]
    pub out: PathBuf,
}

fn load_grid(
    path: &Path,
    cellsize: Option<f64>,
    origin: Option<Coordinate>,
) -> CliResult<LoadedGrid> {
    let text = read_text(path, Failure::data)?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let loaded = if is_csv {
        let side = cellsize.ok_or_else(|| {
            Failure::usage(format!("{} is CSV; --cellsize is required", path.display()))
        })?;
        load_csv_grid(&text, side, origin.unwrap_or(Coordinate::new(0.0, 0.0)))
    } else {
        load_ascii_grid(&text)
    };
    loaded.map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn check_flags(a: &EntropyArgs) -> CliResult<()> {
    match a.measure {
        Measure::Batty | Measure::Kc if a.partition.is_none() => {
            return Err(Failure::usage(format!(
                "--measure {} requires --partition",
                a.measure.name()
            )))
        }
        Measure::Kc if a.nd.is_empty() => {
            return Err(Failure::usage("--measure kc requires at least one --nd"))
        }
        _ => {}
    }
    if a.measure == Measure::Kc {
        let annuli = matches!(a.partition, Some(PartitionSpec::Annuli(_)));
        if !annuli && a.nd.iter().any(|n| matches!(n, NdSpec::Annuli(_))) {
            return Err(Failure::usage("--nd ann:J needs an annuli partition"));
        }
    }
    if let Some(s) = a.cellsize {
        if !(s.is_finite() && s > 0.0) {
            return Err(Failure::usage(format!(
                "--cellsize must be positive, got {s}"
            )));
        }
    }
    Ok(())
}

pub fn run(a: EntropyArgs) -> CliResult<()> {
    check_flags(&a)?;
    let loaded = load_grid(&a.grid, a.cellsize, a.origin)?;
    let grid = &loaded.grid;
    let mut inputs = vec![a.grid.display().to_string()];
    let mut params = json!({
        "measure": a.measure.name(),
        "nrows": grid.nrows(),
        "ncols": grid.ncols(),
        "cell_side": grid.cell_side(),
        "codes": loaded.codes,
    });

    let focal_code = a
        .focal
        .unwrap_or(*loaded.codes.last().expect("grids are nonempty"));
    let focal = loaded.dense_code(focal_code).ok_or_else(|| {
        Failure::data(format!(
            "focal code {focal_code} does not occur in {}",
            a.grid.display()
        ))
    })?;

    let partition = match &a.partition {
        Some(spec) => {
            if let PartitionSpec::Labels(p) = spec {
                inputs.push(p.display().to_string());
            }
            Some(build_partition(spec, &loaded, &a)?)
        }
        None => None,
    };
    let mut out = Outputs::create(&a.out)?;
    let name = a.measure.name();

    match a.measure {
        Measure::Shannon => {
            let p = grid.category_proportions();
            let h = shannon_entropy(&p)?;
            let rec = MeasureRecord::shannon(h, &p, &loaded.codes, json!({"option": "-"}));
            write_records(&mut out, name, &[rec])?;
        }
        Measure::Batty => {
            let part = partition.as_ref().expect("checked");
            let option = a.partition.as_ref().expect("checked").to_string();
            let r = batty_entropy(grid, part, focal).context(format!("focal code {focal_code}"))?;
            let rec = MeasureRecord::batty(
                &r,
                json!({"option": option, "focal": focal_code, "n_areas": part.n_areas()}),
            );
            write_records(&mut out, name, &[rec])?;
        }
        Measure::Kc => {
            let part = partition.as_ref().expect("checked");
            let pspec = a.partition.as_ref().expect("checked").to_string();
            let mut records = Vec::new();
            for nd in &a.nd {
                let (neighbourhood, distance) = match *nd {
                    NdSpec::Distance(d) => (Neighbourhood::Distance(d), Some(d)),
                    NdSpec::Percentile(p) => {
                        let d = centroid_distance_percentiles(part, &[p])?[0];
                        (Neighbourhood::Distance(d), Some(d))
                    }
                    NdSpec::Annuli(j) => (Neighbourhood::RingSteps(j), None),
                };
                let r = kc_entropy(grid, part, focal, &neighbourhood, a.smoothing.into())
                    .context(format!("focal code {focal_code}"))?;
                records.push(MeasureRecord::kc(
                    &r,
                    json!({
                        "option": format!("{pspec} nd={nd}"),
                        "focal": focal_code,
                        "n_areas": part.n_areas(),
                        "distance": distance,
                        "smoothing": r.smoothing,
                    }),
                ));
            }
            write_records(&mut out, name, &records)?;
        }
        Measure::Spatial => {
            let spec = build_breaks(&a.breaks, &loaded)?;
            let d = entropy_decomposition(&enumerate_pairs(grid, &spec)?)?;
            let p = json!({"option": a.breaks.to_string(), "breakpoints": spec.breakpoints()});
            out.write_json(&format!("{name}.json"), &decomposition_json(&d, p))?;
            out.write(&format!("{name}.csv"), &decomposition_csv(&d))?;
        }
    }

    if let Value::Object(m) = &mut params {
        m.insert("focal".into(), json!(focal_code));
        m.insert(
            "partition".into(),
            json!(a.partition.as_ref().map(ToString::to_string)),
        );
        m.insert(
            "nd".into(),
            json!(a.nd.iter().map(ToString::to_string).collect::<Vec<_>>()),
        );
        m.insert("breaks".into(), json!(a.breaks.to_string()));
        m.insert("smoothing".into(), json!(Smoothing::from(a.smoothing)));
    }
    out.finish("entropy", inputs, params, Some(a.seed))
}

fn write_records(out: &mut Outputs, name: &str, records: &[MeasureRecord]) -> CliResult<()> {
    out.write_json(&format!("{name}.json"), &records)?;
    out.write(&format!("{name}.csv"), &measures_csv(records))
}

fn build_partition(
    spec: &PartitionSpec,
    loaded: &LoadedGrid,
    a: &EntropyArgs,
) -> CliResult<AreaPartition> {
    let grid = &loaded.grid;
    Ok(match spec {
        PartitionSpec::Voronoi(n) => {
            voronoi_partition(grid, *n, &mut ChaCha8Rng::seed_from_u64(a.seed))?
        }
        PartitionSpec::Annuli(n) => annuli_partition(grid, *n)?,
        PartitionSpec::Labels(path) => {
            let labels = load_grid(path, a.cellsize, a.origin)?;
            partition_from_label_grid(grid, &labels.grid)
                .context(format!("label map {}", path.display()))?
        }
    })
}

fn build_breaks(spec: &BreaksSpec, loaded: &LoadedGrid) -> CliResult<DistanceClassSpec> {
    let grid = &loaded.grid;
    Ok(match spec {
        BreaksSpec::Fixed => distance_breaks_fixed(grid.cell_side(), grid.max_pair_distance())
            .context("fixed breaks need a grid wider than 5 cells along its diagonal")?,
        BreaksSpec::Percentile(f) => distance_breaks_percentile(grid, f)?,
        BreaksSpec::Explicit(upper) => DistanceClassSpec::from_upper_bounds(upper)?,
    })
}
