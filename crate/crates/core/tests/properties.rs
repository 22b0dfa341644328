use proptest::prelude::*;

use spatent::classic::{batty_entropy, kc_from_parts, Adjacency, Smoothing};
use spatent::cooccurrence::{distance_breaks_percentile, entropy_decomposition, enumerate_pairs};
use spatent::lattice::load_ascii_grid;
use spatent::partitions::{annuli_partition, partition_from_labels};
use spatent::{CategoricalGrid, Coordinate};

fn grid_strategy(max_side: usize) -> impl Strategy<Value = CategoricalGrid> {
    (2..=max_side, 2..=max_side, 2u32..=4, 0.05f64..5.0).prop_flat_map(|(nr, nc, k, side)| {
        prop::collection::vec(0..k, nr * nc).prop_map(move |values| {
            CategoricalGrid::new(nr, nc, side, Coordinate::new(0.0, 0.0), values, k).unwrap()
        })
    })
}

const FRACTIONS: [f64; 3] = [0.05, 0.25, 0.5];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_terms_are_consistent(grid in grid_strategy(12)) {
        let spec = distance_breaks_percentile(&grid, &FRACTIONS).unwrap();
        let pd = enumerate_pairs(&grid, &spec).unwrap();
        let n = grid.n_cells() as u64;
        prop_assert_eq!(pd.total_pairs(), n * (n - 1) / 2);
        let d = entropy_decomposition(&pd).unwrap();
        prop_assert!((d.h_z - d.mi - d.residual).abs() < 1e-10);
        prop_assert!(d.mi >= -1e-12);
        for c in &d.classes {
            prop_assert!(c.pi >= -1e-12);
        }
        let p_w: f64 = d.classes.iter().map(|c| c.p_w).sum();
        prop_assert!((p_w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pooling_classes_never_adds_information(grid in grid_strategy(10), k in 0usize..3) {
        let spec = distance_breaks_percentile(&grid, &FRACTIONS).unwrap();
        let pd = enumerate_pairs(&grid, &spec).unwrap();
        prop_assume!(k + 1 < pd.n_classes());
        let fine = entropy_decomposition(&pd).unwrap();
        let coarse = entropy_decomposition(&pd.merge_classes(k).unwrap()).unwrap();
        prop_assert!(coarse.mi <= fine.mi + 1e-12);
        prop_assert!((coarse.h_z - fine.h_z).abs() < 1e-12);
    }

    #[test]
    fn relabelling_categories_leaves_entropies_unchanged(grid in grid_strategy(10), shift in 1u32..4) {
        let k = grid.n_categories();
        let permuted: Vec<u32> = grid.values().iter().map(|&v| (v + shift) % k).collect();
        let other = CategoricalGrid::new(grid.nrows(), grid.ncols(), grid.cell_side(), grid.origin(), permuted, k).unwrap();
        let spec = distance_breaks_percentile(&grid, &FRACTIONS).unwrap();
        let a = entropy_decomposition(&enumerate_pairs(&grid, &spec).unwrap()).unwrap();
        let b = entropy_decomposition(&enumerate_pairs(&other, &spec).unwrap()).unwrap();
        prop_assert!((a.h_z - b.h_z).abs() < 1e-12);
        prop_assert!((a.mi - b.mi).abs() < 1e-12);
    }

    #[test]
    fn batty_stays_within_bounds(grid in grid_strategy(16), rings in 2usize..6) {
        let part = annuli_partition(&grid, rings).unwrap();
        if let Ok(r) = batty_entropy(&grid, &part, 0) {
            let slack = 1e-12 * r.upper_bound.abs().max(1.0);
            prop_assert!(r.global >= r.lower_bound - slack);
            prop_assert!(r.global <= r.upper_bound + slack);
            let p: f64 = r.areas.iter().map(|a| a.p).sum();
            prop_assert!((p - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn kc_sum_smoothing_never_exceeds_average(p in prop::collection::vec(0.0f64..1.0, 2..8), seed in any::<u64>()) {
        let total: f64 = p.iter().sum();
        prop_assume!(total > 0.0);
        let p: Vec<f64> = p.iter().map(|x| x / total).collect();
        let adj = Adjacency::from_fn(p.len(), |i, j| (seed >> ((i * 8 + j) % 64)) & 1 == 1);
        let avg = kc_from_parts(&p, &adj, Smoothing::Average).unwrap();
        let sum = kc_from_parts(&p, &adj, Smoothing::Sum).unwrap();
        // Summed neighbourhoods are at least as large as their averages.
        prop_assert!(sum.global <= avg.global + 1e-12);
    }

    #[test]
    fn ascii_round_trip_is_exact(grid in grid_strategy(12)) {
        let loaded = load_ascii_grid(&grid.to_ascii()).unwrap();
        prop_assert_eq!(loaded.grid.nrows(), grid.nrows());
        prop_assert_eq!(loaded.grid.ncols(), grid.ncols());
        prop_assert_eq!(loaded.grid.cell_side(), grid.cell_side());
        let restored: Vec<i64> = loaded.grid.values().iter().map(|&v| loaded.codes[v as usize]).collect();
        let original: Vec<i64> = grid.values().iter().map(|&v| i64::from(v)).collect();
        prop_assert_eq!(restored, original);
    }

    #[test]
    fn partition_labels_are_compacted(labels in prop::collection::vec(0usize..50, 12)) {
        let grid = CategoricalGrid::from_values(3, 4, 1.0, vec![0; 12]).unwrap();
        let part = partition_from_labels(&grid, &labels).unwrap();
        let mut distinct = labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(part.n_areas(), distinct.len());
        prop_assert!(part.cell_counts().iter().all(|&c| c > 0));
        prop_assert_eq!(part.cell_counts().iter().sum::<usize>(), 12);
        for (a, b) in labels.iter().zip(part.labels()) {
            prop_assert_eq!(distinct.binary_search(a).unwrap(), *b as usize);
        }
    }
}
