//! Independent oracles and input generators shared by the integration
//! suites.
//!
//! Everything here recomputes results by a different route than the
//! library (explicit quadrature instead of the tensor product, exhaustive
//! enumeration instead of Duval's algorithm, counting-based ranks instead
//! of sort-based ones), so agreement is evidence rather than circularity.

#![allow(dead_code)] // each test binary uses a different subset

use rand::Rng;

/// Iterated integrals of a piecewise-linear path by direct quadrature.
///
/// Each linear segment is cut into `substeps` pieces and every level is
/// advanced with the trapezoid rule applied to its defining integral,
/// `S_w(t) = integral of S_{w minus last letter} d gamma_{last letter}`.
/// Returns one dense coefficient block per word length `0..=depth`, words
/// in lexicographic order, matching `TruncatedTensor::level`.
///
/// Levels 1 and 2 are exact for piecewise-linear paths (the integrands are
/// constant and linear per segment); higher levels converge at O(1/substeps^2).
pub fn numeric_signature(points: &[Vec<f64>], depth: usize, substeps: usize) -> Vec<Vec<f64>> {
    assert!(!points.is_empty() && substeps >= 1);
    let dim = points[0].len();
    let mut levels: Vec<Vec<f64>> = (0..=depth).map(|k| vec![0.0; dim.pow(k as u32)]).collect();
    levels[0][0] = 1.0;
    for seg in points.windows(2) {
        let dx: Vec<f64> = seg[0]
            .iter()
            .zip(&seg[1])
            .map(|(p, q)| (q - p) / substeps as f64)
            .collect();
        for _ in 0..substeps {
            // advance bottom-up so each level sees its integrand at both
            // endpoints of the substep
            let mut next = levels.clone();
            for k in 1..=depth {
                for p in 0..levels[k - 1].len() {
                    let avg = 0.5 * (levels[k - 1][p] + next[k - 1][p]);
                    for (i, &d) in dx.iter().enumerate() {
                        next[k][p * dim + i] += avg * d;
                    }
                }
            }
            levels = next;
        }
    }
    levels
}

/// All Lyndon words of exact length `n` over letters `1..=dim`, found by
/// checking every word against every proper rotation, in lexicographic
/// order.
pub fn brute_force_lyndon_words(dim: usize, n: usize) -> Vec<Vec<u8>> {
    let mut found = Vec::new();
    let mut word = vec![1u8; n];
    'outer: loop {
        if is_strictly_smallest_rotation(&word) {
            found.push(word.clone());
        }
        // odometer increment in base `dim`
        for slot in word.iter_mut().rev() {
            if *slot < dim as u8 {
                *slot += 1;
                continue 'outer;
            }
            *slot = 1;
        }
        break;
    }
    found
}

fn is_strictly_smallest_rotation(word: &[u8]) -> bool {
    (1..word.len()).all(|r| {
        let rotated: Vec<u8> = word[r..].iter().chain(&word[..r]).copied().collect();
        word < rotated.as_slice()
    })
}

/// Rank-then-Pearson rank correlation, with counting-based average ranks
/// and the textbook two-pass covariance formula.
pub fn oracle_spearman(xs: &[f64], ys: &[f64]) -> f64 {
    let rx = counting_ranks(xs);
    let ry = counting_ranks(ys);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in rx.iter().zip(&ry) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    cov / (vx * vy).sqrt()
}

/// Average rank of each value: one plus the count of strictly smaller
/// values plus half the count of equal others.
fn counting_ranks(xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            let smaller = xs.iter().filter(|&&o| o < x).count();
            let equal_others = xs.iter().filter(|&&o| o == x).count() - 1;
            1.0 + smaller as f64 + equal_others as f64 / 2.0
        })
        .collect()
}

/// Random value on the dyadic grid `k / 2^bits` with `|k| <= max_num`.
/// Sums and differences of a handful of these are exact in f64, which
/// turns "the signature is translation invariant" into a bitwise check.
pub fn dyadic(rng: &mut impl Rng, bits: u32, max_num: i64) -> f64 {
    rng.random_range(-max_num..=max_num) as f64 / f64::from(2u32.pow(bits))
}

/// Random walk with dyadic-grid steps, `n` points in `dim` coordinates.
pub fn random_dyadic_path(rng: &mut impl Rng, dim: usize, n: usize) -> Vec<Vec<f64>> {
    let mut current: Vec<f64> = (0..dim).map(|_| dyadic(rng, 6, 1 << 8)).collect();
    let mut points = vec![current.clone()];
    for _ in 1..n {
        for slot in current.iter_mut() {
            *slot += dyadic(rng, 6, 1 << 6);
        }
        points.push(current.clone());
    }
    points
}

/// Random walk with continuous steps of magnitude at most `step`.
pub fn random_path(rng: &mut impl Rng, dim: usize, n: usize, step: f64) -> Vec<Vec<f64>> {
    let mut current: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut points = vec![current.clone()];
    for _ in 1..n {
        for slot in current.iter_mut() {
            *slot += rng.random_range(-step..step);
        }
        points.push(current.clone());
    }
    points
}
