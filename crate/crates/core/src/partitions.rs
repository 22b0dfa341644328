//! Sub-area partitions of a lattice: nearest-site (Dirichlet) tessellation,
//! concentric equal-width annuli, and externally supplied label maps.
//!
//! Every constructor compacts labels so that each area holds at least one
//! cell; entropy sums then run over occupied areas only.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lattice::{CategoricalGrid, Coordinate};
use crate::stats;

/// Assignment of grid cells to `G` non-empty areas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaPartition {
    labels: Vec<u32>,
    cell_counts: Vec<usize>,
    sizes: Vec<f64>,
    centroids: Vec<Coordinate>,
    cell_area: f64,
}

impl AreaPartition {
    /// Compacts arbitrary per-cell labels, keeping the order of the distinct labels.
    fn from_raw_labels(grid: &CategoricalGrid, raw: &[usize]) -> Result<Self> {
        if raw.len() != grid.n_cells() {
            return Err(Error::Shape(format!(
                "{} labels for a grid of {} cells",
                raw.len(),
                grid.n_cells()
            )));
        }
        let index: BTreeMap<usize, u32> = {
            let mut seen: BTreeMap<usize, u32> = raw.iter().map(|&l| (l, 0)).collect();
            for (k, slot) in seen.values_mut().enumerate() {
                *slot = k as u32;
            }
            seen
        };
        let n_areas = index.len();
        let labels: Vec<u32> = raw.iter().map(|l| index[l]).collect();

        let mut cell_counts = vec![0usize; n_areas];
        let mut sum_x = vec![0.0f64; n_areas];
        let mut sum_y = vec![0.0f64; n_areas];
        for (idx, &g) in labels.iter().enumerate() {
            let c = grid.centroid_of_index(idx);
            let g = g as usize;
            cell_counts[g] += 1;
            sum_x[g] += c.x;
            sum_y[g] += c.y;
        }
        let cell_area = grid.cell_area();
        let sizes = cell_counts.iter().map(|&n| n as f64 * cell_area).collect();
        let centroids = cell_counts
            .iter()
            .zip(sum_x.iter().zip(&sum_y))
            .map(|(&n, (&sx, &sy))| Coordinate::new(sx / n as f64, sy / n as f64))
            .collect();
        Ok(Self {
            labels,
            cell_counts,
            sizes,
            centroids,
            cell_area,
        })
    }

    /// Number of areas `G`.
    pub fn n_areas(&self) -> usize {
        self.cell_counts.len()
    }

    /// Per-cell area index, aligned with the grid's row-major storage.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    /// Area sizes `T_g`.
    pub fn sizes(&self) -> &[f64] {
        &self.sizes
    }

    pub fn centroids(&self) -> &[Coordinate] {
        &self.centroids
    }

    /// `Σ T_g`, computed from the integer cell total.
    pub fn total_size(&self) -> f64 {
        self.labels.len() as f64 * self.cell_area
    }

    /// Pairwise centroid distances `d(g, g')` for `g < g'`, ascending.
    pub fn sorted_centroid_distances(&self) -> Vec<f64> {
        let c = &self.centroids;
        let mut d: Vec<f64> = (0..c.len())
            .flat_map(|i| (i + 1..c.len()).map(move |j| c[i].distance(&c[j])))
            .collect();
        d.sort_by(f64::total_cmp);
        d
    }

    pub(crate) fn check_aligned(&self, grid: &CategoricalGrid) -> Result<()> {
        if self.labels.len() != grid.n_cells() {
            return Err(Error::Shape(format!(
                "partition covers {} cells, grid has {}",
                self.labels.len(),
                grid.n_cells()
            )));
        }
        Ok(())
    }
}

/// Draws `n_centroids` sites uniformly over the window and labels each cell
/// by its nearest site.
pub fn voronoi_partition<R: Rng + ?Sized>(
    grid: &CategoricalGrid,
    n_centroids: usize,
    rng: &mut R,
) -> Result<AreaPartition> {
    if n_centroids < 2 {
        return Err(invalid(format!(
            "need at least 2 centroids, got {n_centroids}"
        )));
    }
    let o = grid.origin();
    let (w, h) = (grid.width(), grid.height());
    let sites: Vec<Coordinate> = (0..n_centroids)
        .map(|_| {
            let x = o.x + rng.random::<f64>() * w;
            let y = o.y + rng.random::<f64>() * h;
            Coordinate::new(x, y)
        })
        .collect();
    voronoi_from_sites(grid, &sites)
}

/// Nearest-site labelling for explicit sites; ties go to the lowest site index.
pub fn voronoi_from_sites(grid: &CategoricalGrid, sites: &[Coordinate]) -> Result<AreaPartition> {
    if sites.len() < 2 {
        return Err(invalid(format!(
            "need at least 2 centroids, got {}",
            sites.len()
        )));
    }
    let raw: Vec<usize> = (0..grid.n_cells())
        .map(|idx| {
            let c = grid.centroid_of_index(idx);
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (k, s) in sites.iter().enumerate() {
                let dx = c.x - s.x;
                let dy = c.y - s.y;
                let d = dx * dx + dy * dy;
                if d < best_d {
                    best_d = d;
                    best = k;
                }
            }
            best
        })
        .collect();
    AreaPartition::from_raw_labels(grid, &raw)
}

/// Concentric equal-width rings around the window centroid.
///
/// The ring width is the largest centre-to-cell-centroid distance divided by
/// `n_rings`, so the outer ring always reaches the window's corner cells.
pub fn annuli_partition(grid: &CategoricalGrid, n_rings: usize) -> Result<AreaPartition> {
    if n_rings < 2 {
        return Err(invalid(format!("need at least 2 rings, got {n_rings}")));
    }
    let center = grid.window_centroid();
    let dist: Vec<f64> = (0..grid.n_cells())
        .map(|idx| grid.centroid_of_index(idx).distance(&center))
        .collect();
    let max_d = dist.iter().copied().fold(0.0, f64::max);
    let raw: Vec<usize> = if max_d == 0.0 {
        vec![0; dist.len()]
    } else {
        let width = max_d / n_rings as f64;
        dist.iter()
            .map(|&d| {
                if d == 0.0 {
                    0
                } else {
                    ((d / width).ceil() as usize).clamp(1, n_rings) - 1
                }
            })
            .collect()
    };
    AreaPartition::from_raw_labels(grid, &raw)
}

/// Partition from a per-cell label map aligned with `grid`.
pub fn partition_from_labels(grid: &CategoricalGrid, labels: &[usize]) -> Result<AreaPartition> {
    AreaPartition::from_raw_labels(grid, labels)
}

/// Partition from a label raster; its codes become area labels.
pub fn partition_from_label_grid(
    grid: &CategoricalGrid,
    labels: &CategoricalGrid,
) -> Result<AreaPartition> {
    if labels.nrows() != grid.nrows() || labels.ncols() != grid.ncols() {
        return Err(Error::Shape(format!(
            "label map is {}x{}, grid is {}x{}",
            labels.nrows(),
            labels.ncols(),
            grid.nrows(),
            grid.ncols()
        )));
    }
    let raw: Vec<usize> = labels.values().iter().map(|&v| v as usize).collect();
    AreaPartition::from_raw_labels(grid, &raw)
}

/// Nearest-rank percentiles of the `G(G-1)/2` pairwise area-centroid distances.
pub fn centroid_distance_percentiles(
    partition: &AreaPartition,
    fractions: &[f64],
) -> Result<Vec<f64>> {
    if partition.n_areas() < 2 {
        return Err(invalid(format!(
            "percentiles need at least 2 areas, partition has {}",
            partition.n_areas()
        )));
    }
    stats::check_fractions(fractions, false)?;
    let d = partition.sorted_centroid_distances();
    Ok(fractions
        .iter()
        .map(|&p| stats::nearest_rank(&d, p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn blank(nrows: usize, ncols: usize, side: f64) -> CategoricalGrid {
        CategoricalGrid::from_values(nrows, ncols, side, vec![0; nrows * ncols]).unwrap()
    }

    #[test]
    fn voronoi_needs_two_sites() {
        let g = blank(4, 4, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(voronoi_partition(&g, 1, &mut rng).is_err());
    }

    #[test]
    fn voronoi_halves() {
        let g = blank(10, 10, 1.0);
        let p = voronoi_from_sites(&g, &[Coordinate::new(2.5, 5.0), Coordinate::new(7.5, 5.0)])
            .unwrap();
        assert_eq!(p.n_areas(), 2);
        assert_eq!(p.sizes(), &[50.0, 50.0]);
        for r in 0..10 {
            for c in 0..10 {
                assert_eq!(p.labels()[r * 10 + c], u32::from(c >= 5));
            }
        }
    }

    #[test]
    fn voronoi_tie_goes_to_lowest_index() {
        // every cell centroid is equidistant from both coincident sites
        let g = blank(3, 3, 1.0);
        let s = Coordinate::new(1.5, 1.5);
        let p = voronoi_from_sites(&g, &[s, s, Coordinate::new(100.0, 100.0)]).unwrap();
        assert_eq!(p.n_areas(), 1);
    }

    #[test]
    fn voronoi_covers_window() {
        let g = blank(40, 40, 0.25);
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let p = voronoi_partition(&g, 20, &mut rng).unwrap();
        assert!(p.n_areas() <= 20);
        assert_eq!(p.sizes().iter().sum::<f64>(), 100.0);
        assert_eq!(p.total_size(), 100.0);
        let again = voronoi_partition(&g, 20, &mut ChaCha8Rng::seed_from_u64(20)).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn annuli_cover_square_window() {
        let g = blank(40, 40, 0.25);
        let p = annuli_partition(&g, 5).unwrap();
        assert_eq!(p.n_areas(), 5);
        assert_eq!(p.cell_counts().iter().sum::<usize>(), 1600);
        assert_eq!(p.sizes().iter().sum::<f64>(), 100.0);
        // corners are in the outermost ring
        assert_eq!(p.labels()[0], 4);
        assert_eq!(p.labels()[1599], 4);
    }

    #[test]
    fn annuli_centre_cell_is_inner_ring() {
        let g = blank(5, 5, 1.0);
        let p = annuli_partition(&g, 2).unwrap();
        assert_eq!(p.labels()[12], 0);
    }

    #[test]
    fn annuli_cover_rectangular_window() {
        let g = blank(167, 140, 250.0);
        let p = annuli_partition(&g, 5).unwrap();
        assert_eq!(p.n_areas(), 5);
        let n = g.n_cells();
        assert_eq!(p.cell_counts().iter().sum::<usize>(), n);
        for corner in [0, 139, n - 140, n - 1] {
            assert_eq!(p.labels()[corner], 4);
        }
    }

    #[test]
    fn annuli_are_monotone_in_distance() {
        let g = blank(23, 31, 0.5);
        let p = annuli_partition(&g, 5).unwrap();
        let c = g.window_centroid();
        let mut pairs: Vec<(f64, u32)> = (0..g.n_cells())
            .map(|i| (g.centroid_of_index(i).distance(&c), p.labels()[i]))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!(pairs.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn annuli_need_two_rings() {
        assert!(annuli_partition(&blank(3, 3, 1.0), 1).is_err());
    }

    #[test]
    fn label_maps() {
        let g = blank(4, 4, 0.5);
        let p = partition_from_labels(&g, &[3; 16]).unwrap();
        assert_eq!(p.n_areas(), 1);
        assert_eq!(p.sizes(), &[g.window_size()]);

        let checker: Vec<usize> = (0..16).map(|i| (i / 4 + i % 4) % 2).collect();
        let p = partition_from_labels(&g, &checker).unwrap();
        assert_eq!(p.sizes(), &[2.0, 2.0]);

        let missing_middle: Vec<usize> = (0..16).map(|i| if i < 8 { 0 } else { 2 }).collect();
        let p = partition_from_labels(&g, &missing_middle).unwrap();
        assert_eq!(p.n_areas(), 2);
        assert_eq!(p.labels()[15], 1);

        assert!(matches!(
            partition_from_labels(&g, &[0; 15]),
            Err(Error::Shape(_))
        ));
        let other = blank(4, 3, 0.5);
        assert!(matches!(
            partition_from_label_grid(&g, &other),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn centroids_are_member_means() {
        let g = blank(2, 4, 1.0);
        let p = partition_from_labels(&g, &[0, 0, 1, 1, 0, 0, 1, 1]).unwrap();
        assert_eq!(p.centroids()[0], Coordinate::new(1.0, 1.0));
        assert_eq!(p.centroids()[1], Coordinate::new(3.0, 1.0));
    }

    #[test]
    fn percentiles() {
        let g = blank(1, 6, 1.0);
        let p = partition_from_labels(&g, &[0, 0, 1, 1, 1, 1]).unwrap();
        let d = centroid_distance_percentiles(&p, &[0.05, 0.25, 0.5]).unwrap();
        assert_eq!(d, vec![3.0; 3]);

        // three collinear areas one unit apart: distances {1, 1, 2}
        let g = blank(1, 3, 1.0);
        let p = partition_from_labels(&g, &[0, 1, 2]).unwrap();
        let d = centroid_distance_percentiles(&p, &[0.5]).unwrap();
        assert_eq!(d, vec![1.0]);

        let single = partition_from_labels(&g, &[0, 0, 0]).unwrap();
        assert!(centroid_distance_percentiles(&single, &[0.5]).is_err());
        assert!(centroid_distance_percentiles(&p, &[1.5]).is_err());
    }
}
