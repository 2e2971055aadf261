//! Rank correlation and bootstrap confidence intervals.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::rng::{stream_rng, STREAM_BOOTSTRAP};

/// Average ranks (1-based); tied values share the mean of their ranks.
fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("finite values"));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 average to (i + j) / 2 + 1
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / (sxx.sqrt() * syy.sqrt())
}

/// Spearman rank correlation: Pearson correlation of average ranks.
///
/// Errors on mismatched lengths, fewer than 3 pairs, non-finite values,
/// or a constant side (where the coefficient is undefined).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::TooFewSamples {
            got: xs.len(),
            min: 3,
        });
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "correlation input",
        });
    }
    if is_constant(xs) {
        return Err(Error::ConstantInput { side: "left" });
    }
    if is_constant(ys) {
        return Err(Error::ConstantInput { side: "right" });
    }
    Ok(pearson(&average_ranks(xs), &average_ranks(ys)).clamp(-1.0, 1.0))
}

fn is_constant(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

/// Bootstrap summary for one feature against the target score.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapSummary {
    pub feature_name: String,
    /// Rank correlation on the full sample; NaN if undefined there.
    pub point_rho: f64,
    /// Mean over usable bootstrap replicas; NaN if none were usable.
    pub boot_mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_boot: usize,
    /// Replicas where the resampled feature or target was constant.
    pub n_skipped: usize,
    /// True when the confidence interval excludes zero.
    pub significant: bool,
}

/// Bootstraps the rank correlation of every feature column against the
/// target.
///
/// Each replica resamples subjects with replacement; one index draw is
/// shared by all features within a replica, so features stay comparable.
/// Replica indices depend only on `(seed, replica)`, never on thread
/// order. Output is sorted by absolute bootstrap mean, undefined
/// (all-skipped) features last, name as the tie-break.
pub fn bootstrap_correlations(
    features: &FeatureMatrix,
    target: &[f64],
    n_boot: usize,
    ci_level: f64,
    seed: u64,
) -> Result<Vec<BootstrapSummary>> {
    let n = features.n_subjects();
    if target.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: target.len(),
        });
    }
    if n < 3 {
        return Err(Error::TooFewSamples { got: n, min: 3 });
    }
    if n_boot == 0 {
        return Err(Error::InvalidParam("n_boot must be at least 1".into()));
    }
    if !(ci_level > 0.0 && ci_level < 1.0) {
        return Err(Error::InvalidCiLevel { got: ci_level });
    }
    if target.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "target scores",
        });
    }
    if is_constant(target) {
        return Err(Error::DegenerateTarget);
    }

    let columns: Vec<Vec<f64>> = (0..features.n_features()).map(|j| features.column(j)).collect();

    // replica_rhos[r][j]: correlation of feature j in replica r, or None
    // when that resample was degenerate.
    let replica_rhos: Vec<Vec<Option<f64>>> = (0..n_boot)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, STREAM_BOOTSTRAP, r as u64);
            let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            let t: Vec<f64> = idx.iter().map(|&i| target[i]).collect();
            let t_ok = !is_constant(&t);
            columns
                .iter()
                .map(|col| {
                    if !t_ok {
                        return None;
                    }
                    let x: Vec<f64> = idx.iter().map(|&i| col[i]).collect();
                    if is_constant(&x) {
                        None
                    } else {
                        Some(pearson(&average_ranks(&x), &average_ranks(&t)).clamp(-1.0, 1.0))
                    }
                })
                .collect()
        })
        .collect();

    let alpha = 1.0 - ci_level;
    let mut summaries: Vec<BootstrapSummary> = columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut rhos: Vec<f64> = replica_rhos
                .iter()
                .filter_map(|row| row[j])
                .collect();
            let n_skipped = n_boot - rhos.len();
            let point_rho = spearman(col, target).unwrap_or(f64::NAN);
            if rhos.is_empty() {
                return BootstrapSummary {
                    feature_name: features.feature_names()[j].clone(),
                    point_rho,
                    boot_mean: f64::NAN,
                    ci_low: f64::NAN,
                    ci_high: f64::NAN,
                    n_boot,
                    n_skipped,
                    significant: false,
                };
            }
            rhos.sort_by(|a, b| a.partial_cmp(b).expect("finite correlations"));
            let boot_mean = rhos.iter().sum::<f64>() / rhos.len() as f64;
            let ci_low = percentile(&rhos, alpha / 2.0);
            let ci_high = percentile(&rhos, 1.0 - alpha / 2.0);
            BootstrapSummary {
                feature_name: features.feature_names()[j].clone(),
                point_rho,
                boot_mean,
                ci_low,
                ci_high,
                n_boot,
                n_skipped,
                significant: ci_low > 0.0 || ci_high < 0.0,
            }
        })
        .collect();

    summaries.sort_by(|a, b| {
        match (a.boot_mean.is_nan(), b.boot_mean.is_nan()) {
            (true, true) => a.feature_name.cmp(&b.feature_name),
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            (false, false) => b
                .boot_mean
                .abs()
                .partial_cmp(&a.boot_mean.abs())
                .expect("finite means")
                .then_with(|| a.feature_name.cmp(&b.feature_name)),
        }
    });
    Ok(summaries)
}

/// Linear-interpolation percentile of an ascending slice, `q` in [0, 1].
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{FeatureMatrix, FeatureVector};

    #[test]
    fn ranks_average_over_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 30.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(average_ranks(&[10.0, 10.0, 30.0]), vec![1.5, 1.5, 3.0]);
        assert_eq!(
            average_ranks(&[5.0, 1.0, 5.0, 5.0, 0.0]),
            vec![4.0, 2.0, 4.0, 4.0, 1.0]
        );
    }

    #[test]
    fn monotone_data_has_unit_correlation() {
        let x = [1.0, 2.0, 5.0, 9.0];
        let y = [1.0, 8.0, 27.0, 1000.0];
        assert!((spearman(&x, &y).unwrap() - 1.0).abs() < 1e-12);
        let y_rev = [4.0, 3.0, 2.0, 1.0];
        assert!((spearman(&x, &y_rev).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn tied_example_matches_hand_computation() {
        // x ranks: 1.5 1.5 3 4; y ranks: 1 2 3 4
        // Pearson of ranks = 0.9486832980505138
        let x = [3.0, 3.0, 5.0, 7.0];
        let y = [1.0, 2.0, 3.0, 4.0];
        let rho = spearman(&x, &y).unwrap();
        assert!((rho - 0.948_683_298_050_513_8).abs() < 1e-12);
    }

    #[test]
    fn spearman_error_cases() {
        assert!(matches!(
            spearman(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            spearman(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::TooFewSamples { .. })
        ));
        assert!(matches!(
            spearman(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::ConstantInput { side: "left" })
        ));
        assert!(matches!(
            spearman(&[1.0, 2.0, 3.0], &[4.0, 4.0, 4.0]),
            Err(Error::ConstantInput { side: "right" })
        ));
    }

    #[test]
    fn percentile_interpolates_linearly() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert_eq!(percentile(&v, 1.0), 4.0);
        assert_eq!(percentile(&v, 0.5), 2.5);
        assert_eq!(percentile(&v, 0.25), 1.75);
    }

    fn small_matrix(n: usize) -> (FeatureMatrix, Vec<f64>) {
        let mut ids = Vec::new();
        let mut rows = Vec::new();
        let mut target = Vec::new();
        for i in 0..n {
            let x = i as f64;
            let mut v = FeatureVector::new();
            v.push("up", x);
            v.push("noise", (x * 7.0 + 3.0) % 5.0);
            v.push("flat", 1.0);
            ids.push(format!("s{i:02}"));
            rows.push(v);
            target.push(x * 2.0 + 1.0);
        }
        (FeatureMatrix::from_rows(ids, rows).unwrap(), target)
    }

    #[test]
    fn bootstrap_is_deterministic_and_sorted() {
        let (m, t) = small_matrix(24);
        let a = bootstrap_correlations(&m, &t, 200, 0.95, 9).unwrap();
        let b = bootstrap_correlations(&m, &t, 200, 0.95, 9).unwrap();
        // NaN summaries for the constant feature defeat ==; the debug
        // text is still an exact comparison
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        // strictly monotone feature dominates and is significant
        assert_eq!(a[0].feature_name, "up");
        assert_eq!(a[0].point_rho, 1.0);
        assert!(a[0].significant);
        assert!(a[0].ci_low <= a[0].boot_mean && a[0].boot_mean <= a[0].ci_high);
        // constant feature cannot be bootstrapped at all
        let flat = a.iter().find(|s| s.feature_name == "flat").unwrap();
        assert_eq!(flat.n_skipped, 200);
        assert!(flat.boot_mean.is_nan());
        assert!(!flat.significant);
        assert_eq!(a.last().unwrap().feature_name, "flat");
        // mean ordering holds for the defined entries
        assert!(a[0].boot_mean.abs() >= a[1].boot_mean.abs());
    }

    #[test]
    fn different_seeds_give_different_intervals() {
        let (m, t) = small_matrix(24);
        let a = bootstrap_correlations(&m, &t, 100, 0.95, 1).unwrap();
        let b = bootstrap_correlations(&m, &t, 100, 0.95, 2).unwrap();
        let na = a.iter().find(|s| s.feature_name == "noise").unwrap();
        let nb = b.iter().find(|s| s.feature_name == "noise").unwrap();
        assert_ne!((na.ci_low, na.ci_high), (nb.ci_low, nb.ci_high));
    }

    #[test]
    fn bootstrap_validation() {
        let (m, t) = small_matrix(10);
        assert!(matches!(
            bootstrap_correlations(&m, &t, 0, 0.95, 0),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            bootstrap_correlations(&m, &t, 10, 1.0, 0),
            Err(Error::InvalidCiLevel { .. })
        ));
        assert!(matches!(
            bootstrap_correlations(&m, &t[..9], 10, 0.95, 0),
            Err(Error::LengthMismatch { .. })
        ));
        let flat_target = vec![1.0; 10];
        assert!(matches!(
            bootstrap_correlations(&m, &flat_target, 10, 0.95, 0),
            Err(Error::DegenerateTarget)
        ));
    }
}
