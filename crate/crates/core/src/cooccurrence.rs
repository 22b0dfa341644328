//! Entropy of the pair variable `Z` and its decomposition over distance
//! classes `W`:
//!
//! ```text
//! H(Z) = MI(Z, W) + H(Z)_W
//! MI(Z, W) = Σ_k p(w_k) PI(Z|w_k)
//! H(Z)_W   = Σ_k p(w_k) H(Z|w_k)
//! ```
//!
//! Pixel pairs are never enumerated one distance at a time. Every unordered
//! pair of distinct cells is reached through exactly one displacement
//! `(dr, dc)` with `dr > 0`, or `dr == 0 && dc > 0`; the distance of an
//! offset is computed once and shared by all `(nrows - dr) * (ncols - |dc|)`
//! pairs it generates.

use rayon::prelude::*;
use serde::Serialize;

use crate::classic::surprisal_term;
use crate::error::{invalid, Error, Result};
use crate::lattice::{offset_distance, CategoricalGrid};
use crate::stats;

/// Relative tolerance (times the cell side) for placing a distance on a class boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Number of unordered category pairs, `R = (I² + I) / 2`.
pub fn n_pair_codes(n_categories: u32) -> usize {
    let i = n_categories as usize;
    (i * i + i) / 2
}

/// Order-independent code of the pair `{i, j}`: the lexicographic rank of
/// `(min, max)` among all pairs `a <= b`.
pub fn pair_code(i: u32, j: u32, n_categories: u32) -> Result<usize> {
    if i >= n_categories || j >= n_categories {
        return Err(invalid(format!(
            "pair ({i}, {j}) out of range for {n_categories} categories"
        )));
    }
    let (a, b) = if i <= j {
        (i as usize, j as usize)
    } else {
        (j as usize, i as usize)
    };
    let n = n_categories as usize;
    Ok(a * n - a * a.saturating_sub(1) / 2 + (b - a))
}

fn pair_lookup(n_categories: u32) -> Vec<usize> {
    let n = n_categories;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| pair_code(i, j, n).expect("in range")))
        .collect()
}

/// Ordered breakpoints `0 = b_0 < b_1 < … < b_K`; class `k` is `(b_{k-1}, b_k]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceClassSpec {
    breakpoints: Vec<f64>,
}

impl DistanceClassSpec {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(invalid("distance classes need at least two breakpoints"));
        }
        if breakpoints[0] != 0.0 {
            return Err(invalid(format!(
                "first breakpoint must be 0, got {}",
                breakpoints[0]
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(invalid("breakpoints must be finite"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!(
                "breakpoints must be strictly increasing: {breakpoints:?}"
            )));
        }
        Ok(Self { breakpoints })
    }

    /// Classes from their upper ends; `b_0 = 0` is prepended.
    pub fn from_upper_bounds(upper: &[f64]) -> Result<Self> {
        let mut b = Vec::with_capacity(upper.len() + 1);
        b.push(0.0);
        b.extend_from_slice(upper);
        Self::new(b)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn n_classes(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// `(lo, hi)` of class `k` (0-based).
    pub fn bounds(&self, k: usize) -> (f64, f64) {
        (self.breakpoints[k], self.breakpoints[k + 1])
    }

    pub fn upper(&self) -> f64 {
        *self.breakpoints.last().expect("at least two breakpoints")
    }

    /// 0-based class of a distance, `None` beyond the last breakpoint.
    pub fn class_of(&self, distance: f64, tolerance: f64) -> Option<usize> {
        let uppers = &self.breakpoints[1..];
        let k = uppers.partition_point(|&b| b + tolerance < distance);
        (k < uppers.len()).then_some(k)
    }

    /// Merges classes `k` and `k + 1` by dropping the breakpoint between them.
    pub fn merge(&self, k: usize) -> Result<Self> {
        if k + 1 >= self.n_classes() {
            return Err(invalid(format!(
                "cannot merge class {k} with its successor among {} classes",
                self.n_classes()
            )));
        }
        let mut b = self.breakpoints.clone();
        b.remove(k + 1);
        Self::new(b)
    }
}

/// Option 1 classes: 4-neighbour contiguity, 12-neighbour ring, up to five
/// cells along the axes, then everything else.
pub fn distance_breaks_fixed(cell_side: f64, d_max: f64) -> Result<DistanceClassSpec> {
    if !(cell_side.is_finite() && cell_side > 0.0) {
        return Err(invalid(format!(
            "cell side must be positive, got {cell_side}"
        )));
    }
    if d_max.is_nan() || d_max <= 5.0 * cell_side {
        return Err(invalid(format!(
            "maximum distance {d_max} must exceed five cell sides ({})",
            5.0 * cell_side
        )));
    }
    DistanceClassSpec::new(vec![
        0.0,
        cell_side,
        2.0 * cell_side,
        5.0 * cell_side,
        d_max,
    ])
}

/// A displacement between two cells, with its pair count over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Offset {
    pub dr: usize,
    pub dc: isize,
    pub distance: f64,
    pub multiplicity: u64,
}

/// All canonical displacements of an `nrows` by `ncols` lattice.
pub fn lattice_offsets(nrows: usize, ncols: usize, cell_side: f64) -> Vec<Offset> {
    let nc = ncols as isize;
    let mut out = Vec::with_capacity(nrows * (2 * ncols).saturating_sub(1));
    for dr in 0..nrows {
        let start = if dr == 0 { 1 } else { -(nc - 1) };
        for dc in start..nc {
            out.push(Offset {
                dr,
                dc,
                distance: offset_distance(cell_side, dr, dc),
                multiplicity: ((nrows - dr) * (ncols - dc.unsigned_abs())) as u64,
            });
        }
    }
    out
}

/// Nearest-rank percentiles of the distances over all `N(N-1)/2` cell pairs,
/// computed from offset multiplicities.
pub fn distance_percentiles(grid: &CategoricalGrid, fractions: &[f64]) -> Result<Vec<f64>> {
    stats::check_fractions(fractions, false)?;
    if grid.n_cells() < 2 {
        return Err(invalid("a single cell has no pair distances"));
    }
    let mut offsets = lattice_offsets(grid.nrows(), grid.ncols(), grid.cell_side());
    offsets.sort_by_key(|o| {
        let dc = o.dc.unsigned_abs() as u64;
        let dr = o.dr as u64;
        (dr * dr + dc * dc, o.dr, o.dc)
    });
    let total: u64 = offsets.iter().map(|o| o.multiplicity).sum();
    fractions
        .iter()
        .map(|&p| {
            let rank = stats::nearest_rank_index(p, total as usize) as u64;
            let mut seen = 0u64;
            for o in &offsets {
                seen += o.multiplicity;
                if seen >= rank {
                    return Ok(o.distance);
                }
            }
            unreachable!("rank never exceeds the pair total")
        })
        .collect()
}

/// Option 2 classes: breakpoints at percentiles of the pair-distance
/// distribution, closed by `d_max`.
///
/// Percentiles that coincide with each other or with `d_max` (tiny grids)
/// collapse into a single breakpoint, so the class count may be smaller
/// than `fractions.len() + 1`.
pub fn distance_breaks_percentile(
    grid: &CategoricalGrid,
    fractions: &[f64],
) -> Result<DistanceClassSpec> {
    stats::check_fractions(fractions, true)?;
    let d_max = grid.max_pair_distance();
    let mut b = vec![0.0];
    for d in distance_percentiles(grid, fractions)? {
        if d < d_max && d > *b.last().expect("nonempty") {
            b.push(d);
        }
    }
    b.push(d_max);
    DistanceClassSpec::new(b)
}

/// Pair-code counts for every canonical displacement of one grid.
///
/// Computing this once lets several distance-class specs be evaluated on the
/// same grid without re-scanning pixel pairs.
#[derive(Debug, Clone)]
pub struct OffsetCooccurrence {
    n_categories: u32,
    cell_side: f64,
    d_max: f64,
    offsets: Vec<Offset>,
    /// `offsets.len() × R`, row-major.
    counts: Vec<u64>,
}

impl OffsetCooccurrence {
    pub fn compute(grid: &CategoricalGrid) -> Result<Self> {
        let n_categories = grid.n_categories();
        if n_categories < 2 {
            return Err(Error::TooFewCategories(n_categories));
        }
        let r = n_pair_codes(n_categories);
        let lut = pair_lookup(n_categories);
        let ni = n_categories as usize;
        let (nrows, ncols) = (grid.nrows(), grid.ncols());
        let offsets = lattice_offsets(nrows, ncols, grid.cell_side());

        let counts: Vec<u64> = offsets
            .par_iter()
            .with_min_len(32)
            .flat_map_iter(|o| {
                let mut local = vec![0u64; r];
                let shift = o.dc.unsigned_abs();
                let width = ncols - shift;
                for row in 0..nrows - o.dr {
                    let a = grid.row(row);
                    let b = grid.row(row + o.dr);
                    let (a, b) = if o.dc >= 0 {
                        (&a[..width], &b[shift..])
                    } else {
                        (&a[shift..], &b[..width])
                    };
                    for (&x, &y) in a.iter().zip(b) {
                        local[lut[x as usize * ni + y as usize]] += 1;
                    }
                }
                local
            })
            .collect();

        Ok(Self {
            n_categories,
            cell_side: grid.cell_side(),
            d_max: grid.max_pair_distance(),
            offsets,
            counts,
        })
    }

    pub fn offsets(&self) -> &[Offset] {
        &self.offsets
    }

    /// Bins the offset table into distance classes.
    pub fn bin(&self, spec: &DistanceClassSpec) -> Result<PairDistribution> {
        let tol = BOUNDARY_TOLERANCE * self.cell_side;
        if self.d_max > spec.upper() + tol {
            return Err(Error::Uncovered {
                upper: spec.upper(),
                d_max: self.d_max,
            });
        }
        let r = n_pair_codes(self.n_categories);
        let k = spec.n_classes();
        let mut counts = vec![0u64; r * k];
        for (o, row) in self.offsets.iter().zip(self.counts.chunks_exact(r)) {
            let class = spec
                .class_of(o.distance, tol)
                .expect("coverage checked against d_max");
            for (code, &n) in row.iter().enumerate() {
                counts[code * k + class] += n;
            }
        }
        Ok(PairDistribution {
            n_categories: self.n_categories,
            spec: spec.clone(),
            counts,
        })
    }
}

/// Counts `n_{r,k}` of unordered category pairs by distance class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDistribution {
    n_categories: u32,
    spec: DistanceClassSpec,
    /// `R × K`, row-major by pair code.
    counts: Vec<u64>,
}

impl PairDistribution {
    /// Wraps explicit counts (`counts[r][k]`).
    pub fn from_counts(
        n_categories: u32,
        spec: DistanceClassSpec,
        counts: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let r = n_pair_codes(n_categories);
        let k = spec.n_classes();
        if counts.len() != r || counts.iter().any(|row| row.len() != k) {
            return Err(Error::Shape(format!("expected a {r}x{k} count matrix")));
        }
        Ok(Self {
            n_categories,
            spec,
            counts: counts.into_iter().flatten().collect(),
        })
    }

    pub fn n_categories(&self) -> u32 {
        self.n_categories
    }

    pub fn n_pair_codes(&self) -> usize {
        n_pair_codes(self.n_categories)
    }

    pub fn n_classes(&self) -> usize {
        self.spec.n_classes()
    }

    pub fn spec(&self) -> &DistanceClassSpec {
        &self.spec
    }

    pub fn count(&self, code: usize, class: usize) -> u64 {
        self.counts[code * self.n_classes() + class]
    }

    /// `n_{·,k}`.
    pub fn class_totals(&self) -> Vec<u64> {
        let k = self.n_classes();
        let mut t = vec![0u64; k];
        for row in self.counts.chunks_exact(k) {
            for (acc, &n) in t.iter_mut().zip(row) {
                *acc += n;
            }
        }
        t
    }

    /// `n_{r,·}`.
    pub fn code_totals(&self) -> Vec<u64> {
        self.counts
            .chunks_exact(self.n_classes())
            .map(|row| row.iter().sum())
            .collect()
    }

    pub fn total_pairs(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Same pairs with classes `k` and `k + 1` pooled.
    pub fn merge_classes(&self, k: usize) -> Result<Self> {
        let spec = self.spec.merge(k)?;
        let old_k = self.n_classes();
        let counts = self
            .counts
            .chunks_exact(old_k)
            .map(|row| {
                let mut merged: Vec<u64> = row.to_vec();
                merged[k] += merged.remove(k + 1);
                merged
            })
            .collect();
        Self::from_counts(self.n_categories, spec, counts)
    }
}

/// Counts every unordered pair of distinct cells by pair code and distance class.
pub fn enumerate_pairs(
    grid: &CategoricalGrid,
    spec: &DistanceClassSpec,
) -> Result<PairDistribution> {
    OffsetCooccurrence::compute(grid)?.bin(spec)
}

/// Partial terms of one distance class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassTerms {
    /// 1-based class index.
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
    pub pairs: u64,
    /// `p(w_k)`.
    pub p_w: f64,
    /// Partial information `PI(Z|w_k)`.
    pub pi: f64,
    /// Partial residual entropy `H(Z|w_k)`.
    pub h: f64,
    /// No pairs fall in this class; both terms are reported as zero.
    pub empty: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyDecomposition {
    pub h_z: f64,
    pub mi: f64,
    pub residual: f64,
    /// Marginal `p(z_r)`.
    pub p_z: Vec<f64>,
    pub classes: Vec<ClassTerms>,
}

pub fn entropy_decomposition(pd: &PairDistribution) -> Result<EntropyDecomposition> {
    let total = pd.total_pairs();
    if total == 0 {
        return Err(Error::EmptyDistribution);
    }
    let n = total as f64;
    let p_z: Vec<f64> = pd.code_totals().iter().map(|&c| c as f64 / n).collect();
    let h_z = p_z.iter().map(|&p| surprisal_term(p)).sum();

    let classes: Vec<ClassTerms> = pd
        .class_totals()
        .into_iter()
        .enumerate()
        .map(|(k, nk)| {
            let (lo, hi) = pd.spec().bounds(k);
            let mut pi = 0.0;
            let mut h = 0.0;
            if nk > 0 {
                for (code, &pz) in p_z.iter().enumerate() {
                    let c = pd.count(code, k);
                    if c > 0 {
                        let cond = c as f64 / nk as f64;
                        pi += cond * (cond / pz).ln();
                        h += surprisal_term(cond);
                    }
                }
            }
            ClassTerms {
                k: k + 1,
                lo,
                hi,
                pairs: nk,
                p_w: nk as f64 / n,
                pi,
                h,
                empty: nk == 0,
            }
        })
        .collect();
    let mi = classes.iter().map(|c| c.p_w * c.pi).sum();
    let residual = classes.iter().map(|c| c.p_w * c.h).sum();
    Ok(EntropyDecomposition {
        h_z,
        mi,
        residual,
        p_z,
        classes,
    })
}

/// `(PI, H) / (PI + H)` for one class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProportionalTerms {
    pub pi: f64,
    pub h: f64,
}

/// Per-class proportional terms; `None` where `PI + H = 0`.
pub fn proportional_terms(d: &EntropyDecomposition) -> Vec<Option<ProportionalTerms>> {
    d.classes
        .iter()
        .map(|c| {
            let s = c.pi + c.h;
            (s > 0.0).then(|| ProportionalTerms {
                pi: c.pi / s,
                h: c.h / s,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn checker() -> CategoricalGrid {
        CategoricalGrid::from_values(2, 2, 0.25, vec![1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn pair_codes() {
        assert_eq!(pair_code(0, 0, 2).unwrap(), 0);
        assert_eq!(pair_code(0, 1, 2).unwrap(), 1);
        assert_eq!(pair_code(1, 0, 2).unwrap(), 1);
        assert_eq!(pair_code(1, 1, 2).unwrap(), 2);
        assert_eq!(n_pair_codes(2), 3);
        assert_eq!(n_pair_codes(3), 6);
        for n in 2..7u32 {
            let mut seen: Vec<usize> = (0..n)
                .flat_map(|i| (i..n).map(move |j| (i, j)))
                .map(|(i, j)| {
                    assert_eq!(pair_code(i, j, n).unwrap(), pair_code(j, i, n).unwrap());
                    pair_code(i, j, n).unwrap()
                })
                .collect();
            let sorted = seen.clone();
            seen.dedup();
            assert_eq!(seen, (0..n_pair_codes(n)).collect::<Vec<_>>());
            assert_eq!(sorted, seen, "codes follow lexicographic order");
        }
        assert!(pair_code(2, 0, 2).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(DistanceClassSpec::new(vec![0.0]).is_err());
        assert!(DistanceClassSpec::new(vec![0.1, 1.0]).is_err());
        assert!(DistanceClassSpec::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(DistanceClassSpec::new(vec![0.0, f64::NAN]).is_err());
        let s = DistanceClassSpec::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.class_of(0.0, 0.0), Some(0));
        assert_eq!(s.class_of(1.0, 0.0), Some(0));
        assert_eq!(s.class_of(1.0 + 1e-12, 1e-9), Some(0));
        assert_eq!(s.class_of(1.5, 0.0), Some(1));
        assert_eq!(s.class_of(2.5, 0.0), None);
    }

    #[test]
    fn checkerboard_single_class() {
        let g = checker();
        let spec = DistanceClassSpec::from_upper_bounds(&[g.max_pair_distance()]).unwrap();
        let pd = enumerate_pairs(&g, &spec).unwrap();
        assert_eq!(pd.code_totals(), vec![1, 4, 1]);
        assert_eq!(pd.total_pairs(), 6);
        let d = entropy_decomposition(&pd).unwrap();
        assert_eq!(d.mi, 0.0);
        assert_abs_diff_eq!(d.residual, d.h_z, epsilon = 1e-15);
    }

    #[test]
    fn checkerboard_two_classes() {
        let g = checker();
        let spec = DistanceClassSpec::from_upper_bounds(&[0.25, g.max_pair_distance()]).unwrap();
        let pd = enumerate_pairs(&g, &spec).unwrap();
        assert_eq!(pd.class_totals(), vec![4, 2]);
        let d = entropy_decomposition(&pd).unwrap();
        let c1 = &d.classes[0];
        assert!(c1.pi > 0.0);
        assert_eq!(c1.h, 0.0);
        // all four rook pairs are mixed: PI = ln(1 / (4/6))
        assert_abs_diff_eq!(c1.pi, 1.5f64.ln(), epsilon = 1e-15);
        // both diagonals are same-category pairs
        assert_abs_diff_eq!(d.classes[1].h, std::f64::consts::LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(d.classes[1].pi, 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(d.h_z, d.mi + d.residual, epsilon = 1e-15);
        let props = proportional_terms(&d);
        assert_eq!(props[0], Some(ProportionalTerms { pi: 1.0, h: 0.0 }));
    }

    #[test]
    fn rook_pairs_on_forty_by_forty() {
        let values: Vec<u32> = (0..1600).map(|i| (i % 7 == 0) as u32).collect();
        let g = CategoricalGrid::from_values(40, 40, 0.25, values).unwrap();
        let spec = distance_breaks_fixed(0.25, g.max_pair_distance()).unwrap();
        let pd = enumerate_pairs(&g, &spec).unwrap();
        let totals = pd.class_totals();
        assert_eq!(totals[0], 3120);
        assert_eq!(totals.iter().sum::<u64>(), 1600 * 1599 / 2);
    }

    #[test]
    fn identical_classes_carry_no_information() {
        let spec = DistanceClassSpec::from_upper_bounds(&[1.0, 2.0, 3.0]).unwrap();
        let pd = PairDistribution::from_counts(
            2,
            spec,
            vec![vec![2, 4, 6], vec![5, 10, 15], vec![3, 6, 9]],
        )
        .unwrap();
        let d = entropy_decomposition(&pd).unwrap();
        assert_abs_diff_eq!(d.mi, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.residual, d.h_z, epsilon = 1e-15);
    }

    #[test]
    fn empty_classes_are_flagged() {
        let spec = DistanceClassSpec::from_upper_bounds(&[1.0, 2.0]).unwrap();
        let pd = PairDistribution::from_counts(
            2,
            spec.clone(),
            vec![vec![1, 0], vec![2, 0], vec![1, 0]],
        )
        .unwrap();
        let d = entropy_decomposition(&pd).unwrap();
        assert!(d.classes[1].empty);
        assert_eq!(
            (d.classes[1].pi, d.classes[1].h, d.classes[1].p_w),
            (0.0, 0.0, 0.0)
        );

        let none = PairDistribution::from_counts(2, spec, vec![vec![0, 0]; 3]).unwrap();
        assert!(matches!(
            entropy_decomposition(&none),
            Err(Error::EmptyDistribution)
        ));
    }

    #[test]
    fn proportional_cases() {
        let spec = DistanceClassSpec::from_upper_bounds(&[1.0]).unwrap();
        let mut d = entropy_decomposition(
            &PairDistribution::from_counts(2, spec, vec![vec![1], vec![1], vec![1]]).unwrap(),
        )
        .unwrap();
        d.classes[0].pi = 0.3;
        d.classes[0].h = 0.3;
        assert_eq!(
            proportional_terms(&d)[0],
            Some(ProportionalTerms { pi: 0.5, h: 0.5 })
        );
        d.classes[0].pi = 0.0;
        d.classes[0].h = 0.0;
        assert_eq!(proportional_terms(&d)[0], None);
    }

    #[test]
    fn fixed_breaks() {
        let s = distance_breaks_fixed(0.25, 13.789).unwrap();
        assert_eq!(s.breakpoints(), &[0.0, 0.25, 0.5, 1.25, 13.789]);
        let s = distance_breaks_fixed(250.0, 40_000.0).unwrap();
        assert_eq!(s.breakpoints(), &[0.0, 250.0, 500.0, 1250.0, 40_000.0]);
        assert!(distance_breaks_fixed(1.0, 5.0).is_err());
        assert!(distance_breaks_fixed(0.0, 5.0).is_err());
    }

    #[test]
    fn uncovered_spec_is_rejected() {
        let g = checker();
        let spec = DistanceClassSpec::from_upper_bounds(&[0.25]).unwrap();
        assert!(matches!(
            enumerate_pairs(&g, &spec),
            Err(Error::Uncovered { .. })
        ));
    }

    #[test]
    fn single_category_is_rejected() {
        let g = CategoricalGrid::from_values(2, 2, 1.0, vec![0; 4]).unwrap();
        let spec = DistanceClassSpec::from_upper_bounds(&[2.0]).unwrap();
        assert!(matches!(
            enumerate_pairs(&g, &spec),
            Err(Error::TooFewCategories(1))
        ));
    }

    #[test]
    fn percentile_breaks_on_tiny_grid() {
        let g = CategoricalGrid::from_values(2, 1, 1.0, vec![0, 1]).unwrap();
        assert_eq!(
            distance_percentiles(&g, &[0.05, 0.25, 0.5]).unwrap(),
            vec![1.0; 3]
        );
        let spec = distance_breaks_percentile(&g, &[0.05, 0.25, 0.5]).unwrap();
        assert_eq!(spec.breakpoints(), &[0.0, 1.0]);
        assert!(distance_breaks_percentile(&g, &[0.5, 0.25]).is_err());
    }

    #[test]
    fn percentiles_match_brute_force_on_five_by_five() {
        let g = CategoricalGrid::from_values(5, 5, 0.5, vec![0; 25]).unwrap();
        let mut all = Vec::new();
        for i in 0..25 {
            for j in i + 1..25 {
                all.push(g.centroid_of_index(i).distance(&g.centroid_of_index(j)));
            }
        }
        assert_eq!(all.len(), 300);
        all.sort_by(f64::total_cmp);
        let fractions = [0.05, 0.25, 0.5, 0.9];
        let got = distance_percentiles(&g, &fractions).unwrap();
        for (p, d) in fractions.iter().zip(got) {
            assert_abs_diff_eq!(d, stats::nearest_rank(&all, *p), epsilon = 1e-12);
        }
    }

    #[test]
    fn merging_classes_pools_counts() {
        let g = CategoricalGrid::from_values(3, 4, 1.0, vec![0, 1, 1, 0, 2, 2, 0, 1, 0, 0, 1, 2])
            .unwrap();
        let spec = distance_breaks_fixed(1.0, 6.0).unwrap();
        let pd = enumerate_pairs(&g, &spec).unwrap();
        let merged = pd.merge_classes(1).unwrap();
        assert_eq!(merged.n_classes(), 3);
        assert_eq!(
            merged.class_totals()[1],
            pd.class_totals()[1] + pd.class_totals()[2]
        );
        assert_eq!(merged.total_pairs(), pd.total_pairs());
        assert!(pd.merge_classes(3).is_err());
    }
}
