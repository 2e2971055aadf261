//! Lifting a scalar series into a path before taking signatures.
//!
//! A 1D series has a degenerate signature (powers of its total change),
//! so scalar streams are embedded first: time augmentation pairs each
//! value with its timestamp, lead-lag exposes quadratic variation, and a
//! basepointed cumulative sum turns values into increments. Combining
//! the last two makes the series sum and the sum of squared values
//! readable directly off the first two signature levels.
//!
//!     cargo run --example series_transforms

use dyadsig::signature::{log_signature, path_signature};
use dyadsig::transforms::{cumsum_basepoint, lead_lag, time_augment, Series};

fn main() -> dyadsig::Result<()> {
    let values = vec![0.8, -0.3, 1.2, 0.4, -0.9, 0.5];
    let series = Series::new(values.clone())?;

    let aug = time_augment(&series);
    println!(
        "time-augmented path : {} points in dimension {}",
        aug.len(),
        aug.point(0).len()
    );
    let sig = path_signature(&aug, 2);
    println!("  level 1 = {:?}  (elapsed steps, total change)", sig.level(1));

    // Cumulative sum with a leading zero, then lead-lag: level 1 of the
    // log-signature holds the series sum on both axes, level 2 holds
    // half the sum of squares.
    let cum = cumsum_basepoint(&series);
    let cum_values: Vec<f64> = (0..cum.len()).map(|i| cum.point(i)[0]).collect();
    let path = lead_lag(&Series::new(cum_values)?);
    let logsig = log_signature(&path, 2);
    let sum: f64 = values.iter().sum();
    let sum_sq: f64 = values.iter().map(|v| v * v).sum();
    println!("lead-lag of cumsum  : {} points in dimension 2", path.len());
    println!("  [1]  = {:>10.6}   series sum   = {sum:>10.6}", logsig.get("1").unwrap());
    println!("  [2]  = {:>10.6}", logsig.get("2").unwrap());
    println!("  2*[12] = {:>8.6}   sum of squares = {sum_sq:>8.6}", 2.0 * logsig.get("12").unwrap());
    Ok(())
}
