//! Embeddings that turn scalar series into paths worth signing.
//!
//! A signature sees a path only up to reparametrization, so a bare scalar
//! stream often signs to something uninformative. These transforms add the
//! missing structure: explicit time, a lead-lag echo that exposes
//! quadratic variation at level 2, or a cumulative-sum basepoint that
//! pins down the running total.

use crate::error::{Error, Result};
use crate::signature::Path;

/// Scalar series with optional strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    values: Vec<f64>,
    timestamps: Option<Vec<f64>>,
}

impl Series {
    /// Series indexed by position only.
    pub fn new(values: Vec<f64>) -> Result<Series> {
        Self::build(values, None)
    }

    /// Series with one timestamp per value.
    pub fn with_timestamps(values: Vec<f64>, timestamps: Vec<f64>) -> Result<Series> {
        Self::build(values, Some(timestamps))
    }

    fn build(values: Vec<f64>, timestamps: Option<Vec<f64>>) -> Result<Series> {
        if values.is_empty() {
            return Err(Error::EmptyPath);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "series values",
            });
        }
        if let Some(ts) = &timestamps {
            if ts.len() != values.len() {
                return Err(Error::TimestampCountMismatch {
                    values: values.len(),
                    timestamps: ts.len(),
                });
            }
            if ts.iter().any(|t| !t.is_finite()) {
                return Err(Error::NonFinite {
                    context: "series timestamps",
                });
            }
            for i in 1..ts.len() {
                if ts[i] <= ts[i - 1] {
                    return Err(Error::TimestampsNotIncreasing { index: i });
                }
            }
        }
        Ok(Series { values, timestamps })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty value lists
    }

    fn timestamp(&self, i: usize) -> f64 {
        match &self.timestamps {
            Some(ts) => ts[i],
            None => i as f64,
        }
    }
}

/// 2-D path `(t_i, v_i)`; index timestamps are used when none were given.
pub fn time_augment(series: &Series) -> Path {
    let mut data = Vec::with_capacity(series.len() * 2);
    for (i, &v) in series.values().iter().enumerate() {
        data.push(series.timestamp(i));
        data.push(v);
    }
    Path::from_flat(2, data).expect("series invariants carry over")
}

/// 2-D lead-lag path: the first coordinate leads, the second trails one
/// step behind. For `N` values the path has `2N - 1` points
/// `(v1,v1), (v2,v1), (v2,v2), (v3,v2), ...`; its level-2 area terms
/// capture the quadratic variation of the series.
pub fn lead_lag(series: &Series) -> Path {
    let v = series.values();
    let mut data = Vec::with_capacity((2 * v.len() - 1) * 2);
    data.push(v[0]);
    data.push(v[0]);
    for i in 1..v.len() {
        data.push(v[i]);
        data.push(v[i - 1]);
        data.push(v[i]);
        data.push(v[i]);
    }
    Path::from_flat(2, data).expect("series invariants carry over")
}

/// 1-D cumulative-sum path anchored at zero: `0, v1, v1+v2, ...`, one
/// point more than the series. Timestamps are dropped.
pub fn cumsum_basepoint(series: &Series) -> Path {
    let mut data = Vec::with_capacity(series.len() + 1);
    data.push(0.0);
    let mut acc = 0.0;
    for &v in series.values() {
        acc += v;
        data.push(acc);
    }
    Path::from_flat(1, data).expect("series invariants carry over")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::log_signature;

    #[test]
    fn time_augment_uses_index_without_timestamps() {
        let s = Series::new(vec![5.0, 7.0, 6.0]).unwrap();
        let p = time_augment(&s);
        assert_eq!(p.len(), 3);
        assert_eq!(p.point(0), &[0.0, 5.0]);
        assert_eq!(p.point(2), &[2.0, 6.0]);
    }

    #[test]
    fn time_augment_keeps_explicit_timestamps() {
        let s = Series::with_timestamps(vec![5.0, 7.0], vec![0.25, 1.5]).unwrap();
        let p = time_augment(&s);
        assert_eq!(p.point(0), &[0.25, 5.0]);
        assert_eq!(p.point(1), &[1.5, 7.0]);
    }

    #[test]
    fn lead_lag_point_layout() {
        let s = Series::new(vec![1.0, 3.0]).unwrap();
        let p = lead_lag(&s);
        assert_eq!(p.len(), 3);
        assert_eq!(p.point(0), &[1.0, 1.0]);
        assert_eq!(p.point(1), &[3.0, 1.0]);
        assert_eq!(p.point(2), &[3.0, 3.0]);
    }

    #[test]
    fn lead_lag_area_is_half_quadratic_variation() {
        // increments +2 and -1: quadratic variation 5, area coordinate 5/2
        let s = Series::new(vec![1.0, 3.0, 2.0]).unwrap();
        let ls = log_signature(&lead_lag(&s), 2);
        assert_eq!(2.0 * ls.get("12").unwrap(), 5.0);
    }

    #[test]
    fn cumsum_prepends_zero_and_accumulates() {
        let s = Series::with_timestamps(vec![1.0, -2.0, 4.0], vec![0.5, 0.75, 0.875]).unwrap();
        let p = cumsum_basepoint(&s);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.len(), 4);
        assert_eq!(p.point(0), &[0.0]);
        assert_eq!(p.point(1), &[1.0]);
        assert_eq!(p.point(2), &[-1.0]);
        assert_eq!(p.point(3), &[3.0]);
    }

    #[test]
    fn cumsum_then_lead_lag_recovers_sum_of_squares() {
        // level 1 of the composite equals the series total; twice the area
        // coordinate equals the sum of squared values.
        let s = Series::new(vec![1.5, -0.5, 2.0]).unwrap();
        let flat: Vec<f64> = cumsum_basepoint(&s)
            .total_displacement();
        assert_eq!(flat, vec![3.0]);
        let cumsum = cumsum_basepoint(&s);
        let sums = Series::new((0..cumsum.len()).map(|i| cumsum.point(i)[0]).collect()).unwrap();
        let ls = log_signature(&lead_lag(&sums), 2);
        assert_eq!(ls.get("1"), Some(3.0));
        assert_eq!(ls.get("2"), Some(3.0));
        assert_eq!(2.0 * ls.get("12").unwrap(), 1.5 * 1.5 + 0.5 * 0.5 + 4.0);
    }

    #[test]
    fn series_validation() {
        assert!(matches!(Series::new(vec![]), Err(Error::EmptyPath)));
        assert!(matches!(
            Series::with_timestamps(vec![1.0], vec![]),
            Err(Error::TimestampCountMismatch { .. })
        ));
        assert!(matches!(
            Series::with_timestamps(vec![1.0, 2.0], vec![1.0, 1.0]),
            Err(Error::TimestampsNotIncreasing { index: 1 })
        ));
        assert!(matches!(
            Series::new(vec![f64::INFINITY]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn single_value_lead_lag_is_one_point() {
        let s = Series::new(vec![2.0]).unwrap();
        assert_eq!(lead_lag(&s).len(), 1);
        assert_eq!(cumsum_basepoint(&s).len(), 2);
    }
}
