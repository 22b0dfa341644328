//! Order statistics shared by the partition, distance-class and study code.

use crate::error::{invalid, Result};

/// 1-based nearest rank `ceil(p * n)`, clamped to `1..=n`.
///
/// The product is nudged down by a few ulps so that, e.g., `0.05 * 100`
/// evaluating to `5.000000000000001` still gives rank 5.
pub fn nearest_rank_index(p: f64, n: usize) -> usize {
    let raw = p * n as f64;
    let rank = (raw - raw.abs() * 1e-12).ceil() as usize;
    rank.clamp(1, n.max(1))
}

/// Nearest-rank percentile of an ascending slice.
pub fn nearest_rank(sorted: &[f64], p: f64) -> f64 {
    sorted[nearest_rank_index(p, sorted.len()) - 1]
}

pub fn check_fractions(fractions: &[f64], strictly_increasing: bool) -> Result<()> {
    if fractions.is_empty() {
        return Err(invalid("at least one percentile fraction is required"));
    }
    for &p in fractions {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("percentile fraction {p} is not in (0, 1)")));
        }
    }
    if strictly_increasing && fractions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("percentile fractions must be strictly increasing"));
    }
    Ok(())
}

/// Linearly interpolated quantile (the "type 7" rule) of an ascending slice.
pub fn quantile_linear(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_rank_rule() {
        let v = [1.0, 1.0, 2.0];
        assert_eq!(nearest_rank(&v, 0.5), 1.0);
        assert_eq!(nearest_rank(&v, 0.05), 1.0);
        assert_eq!(nearest_rank(&v, 0.99), 2.0);
        assert_eq!(nearest_rank_index(0.05, 100), 5);
        assert_eq!(nearest_rank_index(0.5, 190), 95);
        assert_eq!(nearest_rank_index(0.05, 190), 10);
    }

    #[test]
    fn linear_quantiles() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_linear(&v, 0.0), 1.0);
        assert_eq!(quantile_linear(&v, 1.0), 4.0);
        assert_eq!(quantile_linear(&v, 0.5), 2.5);
        assert_eq!(quantile_linear(&v, 0.25), 1.75);
    }

    #[test]
    fn fraction_checks() {
        assert!(check_fractions(&[0.05, 0.25, 0.5], true).is_ok());
        assert!(check_fractions(&[0.25, 0.25], true).is_err());
        assert!(check_fractions(&[0.25, 0.25], false).is_ok());
        assert!(check_fractions(&[1.0], false).is_err());
        assert!(check_fractions(&[], false).is_err());
    }
}
