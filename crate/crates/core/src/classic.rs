//! Shannon entropy, Batty's spatial entropy and the Karlström–Ceccato
//! LISA-style entropy.
//!
//! All logarithms are natural. Terms of the form `0 * log(1/0)` are taken
//! as zero.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::CategoricalGrid;
use crate::partitions::AreaPartition;

const SUM_TOLERANCE: f64 = 1e-9;

/// `x * ln(1/x)` with `0 * ln(1/0) = 0`.
pub(crate) fn surprisal_term(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// Shannon entropy of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::Distribution("empty vector".into()));
    }
    for (i, &v) in p.iter().enumerate() {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Distribution(format!("entry {i} is {v}")));
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::Distribution(format!("entries sum to {sum}")));
    }
    Ok(p.iter().map(|&v| surprisal_term(v)).sum())
}

/// Per-area share `p_g` of the focal category's cells.
pub fn focal_probabilities(
    grid: &CategoricalGrid,
    partition: &AreaPartition,
    focal: u32,
) -> Result<Vec<f64>> {
    partition.check_aligned(grid)?;
    if focal >= grid.n_categories() {
        return Err(invalid(format!(
            "focal category {focal} out of range for {} categories",
            grid.n_categories()
        )));
    }
    let mut counts = vec![0usize; partition.n_areas()];
    for (&v, &g) in grid.values().iter().zip(partition.labels()) {
        if v == focal {
            counts[g as usize] += 1;
        }
    }
    let total: usize = counts.iter().sum();
    if total == 0 {
        return Err(Error::NoFocalCells { focal });
    }
    Ok(counts
        .into_iter()
        .map(|c| c as f64 / total as f64)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BattyArea {
    pub p: f64,
    pub size: f64,
    /// Intensity `p_g / T_g`.
    pub lambda: f64,
    /// `p_g * ln(T_g / p_g)`.
    pub local: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BattyResult {
    pub global: f64,
    /// `global / ln(T)`; absent when `T <= 1`.
    pub relative: Option<f64>,
    /// `ln(T_g*)` for the smallest area `g*`.
    pub lower_bound: f64,
    /// `ln(T)`.
    pub upper_bound: f64,
    pub areas: Vec<BattyArea>,
}

/// Batty's entropy from occurrence probabilities and area sizes.
pub fn batty_from_parts(p: &[f64], sizes: &[f64]) -> Result<BattyResult> {
    if p.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "{} probabilities for {} areas",
            p.len(),
            sizes.len()
        )));
    }
    shannon_entropy(p)?;
    if let Some(&bad) = sizes.iter().find(|&&t| !(t.is_finite() && t > 0.0)) {
        return Err(invalid(format!("area size {bad} is not positive")));
    }
    let areas: Vec<BattyArea> = p
        .iter()
        .zip(sizes)
        .map(|(&pg, &tg)| BattyArea {
            p: pg,
            size: tg,
            lambda: pg / tg,
            local: if pg > 0.0 { pg * (tg / pg).ln() } else { 0.0 },
        })
        .collect();
    let global = areas.iter().map(|a| a.local).sum();
    let total: f64 = sizes.iter().sum();
    let smallest = sizes.iter().copied().fold(f64::INFINITY, f64::min);
    let upper_bound = total.ln();
    Ok(BattyResult {
        global,
        relative: (total > 1.0).then(|| global / upper_bound),
        lower_bound: smallest.ln(),
        upper_bound,
        areas,
    })
}

/// Batty's spatial entropy of the focal category over `partition`.
pub fn batty_entropy(
    grid: &CategoricalGrid,
    partition: &AreaPartition,
    focal: u32,
) -> Result<BattyResult> {
    let p = focal_probabilities(grid, partition, focal)?;
    let mut r = batty_from_parts(&p, partition.sizes())?;
    // sizes sum exactly from integer cell counts
    let total = partition.total_size();
    r.upper_bound = total.ln();
    r.relative = (total > 1.0).then(|| r.global / r.upper_bound);
    Ok(r)
}

/// Symmetric binary neighbourhood matrix over areas, diagonal always set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    cells: Vec<bool>,
}

impl Adjacency {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    /// Builds from a predicate; the diagonal is forced on and the result symmetrised.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut cells = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j || f(i, j) || f(j, i) {
                    cells[i * n + j] = true;
                }
            }
        }
        Self { n, cells }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }
}

/// Areas are neighbours when their centroids lie within `distance`.
pub fn area_adjacency(partition: &AreaPartition, distance: f64) -> Result<Adjacency> {
    if distance.is_nan() || distance < 0.0 {
        return Err(invalid(format!(
            "neighbourhood distance {distance} is negative"
        )));
    }
    let c = partition.centroids();
    Ok(Adjacency::from_fn(c.len(), |i, j| {
        c[i].distance(&c[j]) <= distance
    }))
}

/// Areas are neighbours when their indices differ by at most `steps`
/// (rings of an annuli partition, counted outward).
pub fn ring_adjacency(n_areas: usize, steps: usize) -> Adjacency {
    Adjacency::from_fn(n_areas, |i, j| i.abs_diff(j) <= steps)
}

/// How the neighbourhood of each area is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Neighbourhood {
    /// Centroid distance threshold.
    Distance(f64),
    /// Up to the `j`th neighbouring ring.
    RingSteps(usize),
}

impl Neighbourhood {
    pub fn adjacency(&self, partition: &AreaPartition) -> Result<Adjacency> {
        match *self {
            Neighbourhood::Distance(d) => area_adjacency(partition, d),
            Neighbourhood::RingSteps(j) => Ok(ring_adjacency(partition.n_areas(), j)),
        }
    }
}

/// Aggregation of neighbouring probabilities into `p̃_g`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    /// Row-standardised mean over the neighbourhood (self included).
    #[default]
    Average,
    /// Plain sum over the neighbourhood; `p̃_g` may exceed 1.
    Sum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KcArea {
    pub p: f64,
    pub p_smoothed: f64,
    /// `p_g * ln(1 / p̃_g)`.
    pub local: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KcResult {
    pub global: f64,
    /// `global / ln(G)`; absent for a single area.
    pub relative: Option<f64>,
    pub smoothing: Smoothing,
    pub areas: Vec<KcArea>,
}

/// Karlström–Ceccato entropy from area probabilities and a neighbourhood matrix.
pub fn kc_from_parts(p: &[f64], adjacency: &Adjacency, smoothing: Smoothing) -> Result<KcResult> {
    if p.len() != adjacency.len() {
        return Err(Error::Shape(format!(
            "{} probabilities for a {}-area adjacency",
            p.len(),
            adjacency.len()
        )));
    }
    shannon_entropy(p)?;
    let areas: Vec<KcArea> = (0..p.len())
        .map(|g| {
            let row = adjacency.row(g);
            let (sum, n) = row
                .iter()
                .zip(p)
                .filter(|(&a, _)| a)
                .fold((0.0, 0usize), |(s, n), (_, &pg)| (s + pg, n + 1));
            let p_smoothed = match smoothing {
                Smoothing::Average => sum / n as f64,
                Smoothing::Sum => sum,
            };
            // p_g > 0 implies p̃_g > 0 because every area neighbours itself
            let local = if p[g] > 0.0 {
                -p[g] * p_smoothed.ln()
            } else {
                0.0
            };
            KcArea {
                p: p[g],
                p_smoothed,
                local,
            }
        })
        .collect();
    let global = areas.iter().map(|a| a.local).sum();
    let n = p.len();
    Ok(KcResult {
        global,
        relative: (n > 1).then(|| global / (n as f64).ln()),
        smoothing,
        areas,
    })
}

/// Karlström–Ceccato entropy of the focal category over `partition`.
pub fn kc_entropy(
    grid: &CategoricalGrid,
    partition: &AreaPartition,
    focal: u32,
    neighbourhood: &Neighbourhood,
    smoothing: Smoothing,
) -> Result<KcResult> {
    let p = focal_probabilities(grid, partition, focal)?;
    let adjacency = neighbourhood.adjacency(partition)?;
    kc_from_parts(&p, &adjacency, smoothing)
}
