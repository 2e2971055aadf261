//! Outcome scales, label binarization, ROC analysis, and cross-validated
//! classification.

mod svm;

pub use svm::{train_linear_svm, train_linear_svm_with, LinearSvm, SvmConfig};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream_rng, stream_seed, STREAM_FOLDS, STREAM_SVM};

/// Neuropsychological test scales the pipeline understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scale {
    Wisc,
    Tea,
    Nepsy,
    Celf,
}

impl Scale {
    pub const ALL: [Scale; 4] = [Scale::Wisc, Scale::Tea, Scale::Nepsy, Scale::Celf];

    /// Canonical upper-case name used in file names and reports.
    pub fn name(self) -> &'static str {
        match self {
            Scale::Wisc => "WISC",
            Scale::Tea => "TEA",
            Scale::Nepsy => "NEPSY",
            Scale::Celf => "CELF",
        }
    }

    /// Case-insensitive parse of a scale name.
    pub fn parse(s: &str) -> Result<Scale> {
        match s.to_ascii_uppercase().as_str() {
            "WISC" => Ok(Scale::Wisc),
            "TEA" => Ok(Scale::Tea),
            "NEPSY" => Ok(Scale::Nepsy),
            "CELF" => Ok(Scale::Celf),
            _ => Err(Error::UnknownScale { got: s.to_string() }),
        }
    }

    /// Valid raw score range.
    pub fn range(self) -> (i32, i32) {
        match self {
            Scale::Wisc => (40, 160),
            _ => (1, 19),
        }
    }

    /// Population mean and standard deviation of the standardized score.
    pub fn norm(self) -> (f64, f64) {
        match self {
            Scale::Wisc => (100.0, 15.0),
            _ => (10.0, 3.0),
        }
    }
}

/// Score band relative to the population: more than one standard
/// deviation below the mean, within one, or more than one above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Band {
    Low,
    Medium,
    High,
}

/// Assigns the score band; boundary scores exactly one standard deviation
/// out stay in the middle band.
pub fn score_band(scale: Scale, score: i32) -> Result<Band> {
    let (min, max) = scale.range();
    if score < min || score > max {
        return Err(Error::ScoreOutOfRange {
            scale: scale.name(),
            score,
            min,
            max,
        });
    }
    let (mean, sd) = scale.norm();
    let s = score as f64;
    if s < mean - sd {
        Ok(Band::Low)
    } else if s > mean + sd {
        Ok(Band::High)
    } else {
        Ok(Band::Medium)
    }
}

/// Positive-class rule for classification: TEA flags only the low band;
/// the other scales flag low and medium together.
pub fn binarize(scale: Scale, score: i32) -> Result<bool> {
    let band = score_band(scale, score)?;
    Ok(match scale {
        Scale::Tea => band == Band::Low,
        _ => band != Band::High,
    })
}

/// Reported gender in the score table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

/// One subject's outcome scores and demographics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub subject_id: String,
    pub wisc: i32,
    pub tea: i32,
    pub nepsy: i32,
    pub celf: i32,
    pub age_years: f64,
    pub gender: Gender,
}

impl ScoreRecord {
    pub fn score(&self, scale: Scale) -> i32 {
        match scale {
            Scale::Wisc => self.wisc,
            Scale::Tea => self.tea,
            Scale::Nepsy => self.nepsy,
            Scale::Celf => self.celf,
        }
    }

    /// Demographics row: age in years and gender coded male 0, female 1.
    pub fn demographics(&self) -> Vec<f64> {
        let g = match self.gender {
            Gender::Male => 0.0,
            Gender::Female => 1.0,
        };
        vec![self.age_years, g]
    }
}

/// One point on a ROC step curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

/// Area under the ROC curve by pair counting, ties worth one half, plus
/// the step curve from (0,0) to (1,1).
pub fn roc_auc(margins: &[f64], labels: &[bool]) -> Result<(f64, Vec<RocPoint>)> {
    if margins.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: margins.len(),
            right: labels.len(),
        });
    }
    if margins.iter().any(|m| !m.is_finite()) {
        return Err(Error::NonFinite {
            context: "decision margins",
        });
    }
    let n_pos = labels.iter().filter(|&&y| y).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::SingleClass { scale: "evaluation" });
    }

    let mut wins = 0.0;
    for (mp, yp) in margins.iter().zip(labels) {
        if !yp {
            continue;
        }
        for (mn, yn) in margins.iter().zip(labels) {
            if *yn {
                continue;
            }
            if mp > mn {
                wins += 1.0;
            } else if mp == mn {
                wins += 0.5;
            }
        }
    }
    let auc = wins / (n_pos as f64 * n_neg as f64);

    let mut order: Vec<usize> = (0..margins.len()).collect();
    order.sort_by(|&a, &b| margins[b].partial_cmp(&margins[a]).expect("finite margins"));
    let mut points = vec![RocPoint { fpr: 0.0, tpr: 0.0 }];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && margins[order[j + 1]] == margins[order[i]] {
            j += 1;
        }
        for &idx in &order[i..=j] {
            if labels[idx] {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        points.push(RocPoint {
            fpr: fp as f64 / n_neg as f64,
            tpr: tp as f64 / n_pos as f64,
        });
        i = j + 1;
    }
    Ok((auc, points))
}

/// Deterministic stratified fold assignment: indices of each class are
/// shuffled with the seed, then dealt round-robin, so fold class counts
/// differ by at most one.
pub fn stratified_folds(labels: &[bool], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    stratified_folds_for(labels, k, seed, "labels")
}

fn stratified_folds_for(
    labels: &[bool],
    k: usize,
    seed: u64,
    scale: &'static str,
) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidParam(format!("need at least 2 folds, got {k}")));
    }
    for class in [true, false] {
        let count = labels.iter().filter(|&&y| y == class).count();
        if count == 0 {
            return Err(Error::SingleClass { scale });
        }
        if count < k {
            return Err(Error::ClassTooSmall {
                scale,
                label: class,
                count,
                required: k,
            });
        }
    }
    let mut folds = vec![Vec::new(); k];
    let mut rng = stream_rng(seed, STREAM_FOLDS, 0);
    for class in [true, false] {
        let mut members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|&(_, &y)| y == class)
            .map(|(i, _)| i)
            .collect();
        members.shuffle(&mut rng);
        for (pos, idx) in members.into_iter().enumerate() {
            folds[pos % k].push(idx);
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Cross-validation result for one scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub scale: Scale,
    pub per_fold_auc: Vec<f64>,
    pub auc_mean: f64,
    /// Population standard deviation over fold AUCs.
    pub auc_std: f64,
    /// One ROC step curve per fold, same order as `per_fold_auc`.
    pub roc_curves: Vec<Vec<RocPoint>>,
}

/// Stratified k-fold cross-validation of the linear classifier.
///
/// Standardization and the fit use the training folds only; margins on
/// the held-out fold feed the ROC. The SVM shuffle seed is derived from
/// `(seed, fold)` so the whole procedure is one deterministic function of
/// its inputs.
pub fn kfold_cv(
    rows: &[Vec<f64>],
    labels: &[bool],
    scale: Scale,
    k: usize,
    c_reg: f64,
    seed: u64,
) -> Result<CvReport> {
    if rows.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: rows.len(),
            right: labels.len(),
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let folds = stratified_folds_for(labels, k, seed, scale.name())?;
    let mut per_fold_auc = Vec::with_capacity(k);
    let mut roc_curves = Vec::with_capacity(k);
    for (fold_index, test_idx) in folds.iter().enumerate() {
        let in_test = |i: &usize| test_idx.binary_search(i).is_ok();
        let train_rows: Vec<Vec<f64>> = (0..rows.len())
            .filter(|i| !in_test(i))
            .map(|i| rows[i].clone())
            .collect();
        let train_labels: Vec<bool> = (0..rows.len())
            .filter(|i| !in_test(i))
            .map(|i| labels[i])
            .collect();
        let cfg = SvmConfig {
            c_reg,
            shuffle_seed: stream_seed(seed, STREAM_SVM, fold_index as u64),
            ..SvmConfig::default()
        };
        let model = train_linear_svm_with(&train_rows, &train_labels, &cfg)?;
        let test_rows: Vec<Vec<f64>> = test_idx.iter().map(|&i| rows[i].clone()).collect();
        let test_labels: Vec<bool> = test_idx.iter().map(|&i| labels[i]).collect();
        let (auc, points) = roc_auc(&model.margins(&test_rows), &test_labels)?;
        per_fold_auc.push(auc);
        roc_curves.push(points);
    }
    let auc_mean = per_fold_auc.iter().sum::<f64>() / k as f64;
    let var = per_fold_auc
        .iter()
        .map(|a| (a - auc_mean) * (a - auc_mean))
        .sum::<f64>()
        / k as f64;
    Ok(CvReport {
        scale,
        per_fold_auc,
        auc_mean,
        auc_std: var.sqrt(),
        roc_curves,
    })
}

/// Reference classifier from age and gender alone, same protocol as
/// `kfold_cv`.
pub fn demographics_baseline(
    records: &[ScoreRecord],
    scale: Scale,
    k: usize,
    c_reg: f64,
    seed: u64,
) -> Result<CvReport> {
    let rows: Vec<Vec<f64>> = records.iter().map(|r| r.demographics()).collect();
    let labels: Result<Vec<bool>> = records
        .iter()
        .map(|r| binarize(scale, r.score(scale)))
        .collect();
    kfold_cv(&rows, &labels?, scale, k, c_reg, seed)
}
