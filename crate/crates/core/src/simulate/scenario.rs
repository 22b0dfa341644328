//! Binary urban rasters for the three settlement scenarios.
//!
//! Points are drawn one at a time and mark the cell containing them as urban
//! until exactly `target_urban` distinct cells are urban, so that every
//! scenario with the same target has the same urban count. Cluster
//! scenarios scatter points around parent centres with isotropic Gaussian
//! offsets (a Thomas-type cluster process); the decentralized scenario
//! draws uniformly over the window (a homogeneous Poisson pattern).

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lattice::{CategoricalGrid, Coordinate};

pub const NON_URBAN: u32 = 0;
pub const URBAN: u32 = 1;

/// Draw budget per cell before the sampler stops drawing and grows the
/// pattern deterministically (only reachable for vanishing `cluster_sd`).
const MAX_DRAWS_PER_CELL: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Monocentric,
    Polycentric,
    Decentralized,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        ScenarioKind::Monocentric,
        ScenarioKind::Polycentric,
        ScenarioKind::Decentralized,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Monocentric => "monocentric",
            ScenarioKind::Polycentric => "polycentric",
            ScenarioKind::Decentralized => "decentralized",
        }
    }

    pub fn default_clusters(&self) -> usize {
        match self {
            ScenarioKind::Monocentric => 1,
            ScenarioKind::Polycentric => 4,
            ScenarioKind::Decentralized => 0,
        }
    }

    pub fn default_cluster_sd(&self) -> Option<f64> {
        match self {
            ScenarioKind::Monocentric => Some(1.0),
            ScenarioKind::Polycentric => Some(0.55),
            ScenarioKind::Decentralized => None,
        }
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn default_side_cells() -> usize {
    40
}

fn default_window_side() -> f64 {
    10.0
}

/// One scenario; omitted fields take the kind's defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Label used in outputs; defaults to the kind name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default = "default_side_cells")]
    pub nrows: usize,
    #[serde(default = "default_side_cells")]
    pub ncols: usize,
    /// Window width; the cell side is `window_side / ncols`.
    #[serde(default = "default_window_side")]
    pub window_side: f64,
    /// Urban cell count; defaults to 18% of the cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_urban: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_clusters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_sd: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            kind,
            label: None,
            nrows: default_side_cells(),
            ncols: default_side_cells(),
            window_side: default_window_side(),
            target_urban: None,
            n_clusters: None,
            cluster_sd: None,
            seed: 0,
        }
    }

    pub fn label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| self.kind.name().to_owned())
    }

    pub fn n_cells(&self) -> usize {
        self.nrows * self.ncols
    }

    pub fn cell_side(&self) -> f64 {
        self.window_side / self.ncols as f64
    }

    pub fn target(&self) -> usize {
        self.target_urban
            .unwrap_or_else(|| (self.n_cells() as f64 * 0.18).round() as usize)
    }

    pub fn clusters(&self) -> usize {
        self.n_clusters
            .unwrap_or_else(|| self.kind.default_clusters())
    }

    pub fn spread(&self) -> Option<f64> {
        self.cluster_sd.or_else(|| self.kind.default_cluster_sd())
    }

    pub fn validate(&self) -> Result<()> {
        if self.nrows == 0 || self.ncols == 0 {
            return Err(invalid("scenario grid must be nonempty"));
        }
        if !(self.window_side.is_finite() && self.window_side > 0.0) {
            return Err(invalid(format!(
                "window side must be positive, got {}",
                self.window_side
            )));
        }
        let n = self.n_cells();
        let target = self.target();
        if target == 0 || target >= n {
            return Err(invalid(format!(
                "target_urban must be in 1..{n} for a {}x{} grid, got {target}",
                self.nrows, self.ncols
            )));
        }
        let clusters = self.clusters();
        match self.kind {
            ScenarioKind::Monocentric if clusters != 1 => {
                return Err(invalid(format!(
                    "a monocentric scenario has 1 cluster, got {clusters}"
                )))
            }
            ScenarioKind::Polycentric if clusters < 2 => {
                return Err(invalid(format!(
                    "a polycentric scenario needs at least 2 clusters, got {clusters}"
                )))
            }
            ScenarioKind::Decentralized if clusters != 0 => {
                return Err(invalid(format!(
                    "a decentralized scenario has no clusters, got {clusters}"
                )))
            }
            _ => {}
        }
        if self.kind != ScenarioKind::Decentralized {
            match self.spread() {
                Some(sd) if sd.is_finite() && sd >= 0.0 => {}
                other => {
                    return Err(invalid(format!(
                        "cluster_sd must be non-negative, got {other:?}"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Samples one binary raster with exactly `cfg.target()` urban cells.
pub fn sample_scenario<R: Rng + ?Sized>(
    cfg: &ScenarioConfig,
    rng: &mut R,
) -> Result<CategoricalGrid> {
    cfg.validate()?;
    let (nrows, ncols) = (cfg.nrows, cfg.ncols);
    let side = cfg.cell_side();
    let width = cfg.window_side;
    let height = nrows as f64 * side;
    let n = cfg.n_cells();
    let target = cfg.target();

    let parents: Vec<Coordinate> = match cfg.kind {
        ScenarioKind::Monocentric => vec![Coordinate::new(0.5 * width, 0.5 * height)],
        ScenarioKind::Polycentric => (0..cfg.clusters())
            .map(|_| {
                Coordinate::new(
                    width * (0.1 + 0.8 * rng.random::<f64>()),
                    height * (0.1 + 0.8 * rng.random::<f64>()),
                )
            })
            .collect(),
        ScenarioKind::Decentralized => Vec::new(),
    };
    let sd = cfg.spread().unwrap_or(0.0);

    let mut urban = vec![false; n];
    let mut count = 0usize;
    let max_draws = MAX_DRAWS_PER_CELL * n;
    let mut draws = 0usize;
    while count < target && draws < max_draws {
        draws += 1;
        let (x, y) = if parents.is_empty() {
            (rng.random::<f64>() * width, rng.random::<f64>() * height)
        } else {
            let p = parents[rng.random_range(0..parents.len())];
            let dx: f64 = rng.sample(StandardNormal);
            let dy: f64 = rng.sample(StandardNormal);
            (p.x + sd * dx, p.y + sd * dy)
        };
        if !(0.0..width).contains(&x) || !(0.0..height).contains(&y) {
            continue;
        }
        let col = ((x / side) as usize).min(ncols - 1);
        let row = ((y / side) as usize).min(nrows - 1);
        let idx = row * ncols + col;
        if !urban[idx] {
            urban[idx] = true;
            count += 1;
        }
    }

    if count < target {
        // Degenerate spread: grow around the parents, nearest free cell first.
        let centres = if parents.is_empty() {
            vec![Coordinate::new(0.5 * width, 0.5 * height)]
        } else {
            parents
        };
        let centroid = |idx: usize| {
            Coordinate::new(
                ((idx % ncols) as f64 + 0.5) * side,
                ((idx / ncols) as f64 + 0.5) * side,
            )
        };
        let mut turn = 0usize;
        while count < target {
            let c = centres[turn % centres.len()];
            turn += 1;
            let best = (0..n)
                .filter(|&i| !urban[i])
                .min_by(|&a, &b| {
                    centroid(a)
                        .distance(&c)
                        .total_cmp(&centroid(b).distance(&c))
                })
                .expect("target below cell count");
            urban[best] = true;
            count += 1;
        }
    }

    let values = urban
        .into_iter()
        .map(|u| if u { URBAN } else { NON_URBAN })
        .collect();
    CategoricalGrid::new(nrows, ncols, side, Coordinate::new(0.0, 0.0), values, 2)
}
