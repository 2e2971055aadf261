//! End-to-end runs: extract features for a cohort directory, correlate
//! them with a score scale, or cross-validate a classifier.

use std::fmt;
use std::path::{Path as FsPath, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::classifier::{
    binarize, demographics_baseline, kfold_cv, CvReport, Scale, ScoreRecord,
};
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FeatureVector};
use crate::interaction::{session_features, FeatureConfig};
use crate::io;
use crate::rng::stream_seed;
use crate::stats::{bootstrap_correlations, BootstrapSummary};

/// All tunable settings for the analysis commands. Defaults match the
/// reference protocol; a TOML file can override any subset and explicit
/// flags win over the file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub speech_window_s: f64,
    pub movement_max_frames: u64,
    pub fps: f64,
    pub speech_depth: usize,
    pub movement_depth: usize,
    pub drop_level1: bool,
    pub n_boot: usize,
    pub ci_level: f64,
    pub k_folds: usize,
    pub c_reg: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            speech_window_s: 2400.0,
            movement_max_frames: 10_000,
            fps: 15.0,
            speech_depth: 4,
            movement_depth: 3,
            drop_level1: false,
            n_boot: 1000,
            ci_level: 0.95,
            k_folds: 4,
            c_reg: 1.0,
            seed: 0,
        }
    }
}

/// Optional overrides parsed from a TOML config file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub speech_window_s: Option<f64>,
    pub movement_max_frames: Option<u64>,
    pub fps: Option<f64>,
    pub speech_depth: Option<usize>,
    pub movement_depth: Option<usize>,
    pub drop_level1: Option<bool>,
    pub n_boot: Option<usize>,
    pub ci_level: Option<f64>,
    pub k_folds: Option<usize>,
    pub c_reg: Option<f64>,
    pub seed: Option<u64>,
}

impl ConfigOverrides {
    /// Parses a TOML override file.
    pub fn from_file(path: &FsPath) -> Result<ConfigOverrides> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::format(path, 0, e.to_string()))
    }
}

impl RunConfig {
    /// Applies a set of overrides on top of this configuration.
    pub fn with_overrides(mut self, o: &ConfigOverrides) -> RunConfig {
        if let Some(v) = o.speech_window_s {
            self.speech_window_s = v;
        }
        if let Some(v) = o.movement_max_frames {
            self.movement_max_frames = v;
        }
        if let Some(v) = o.fps {
            self.fps = v;
        }
        if let Some(v) = o.speech_depth {
            self.speech_depth = v;
        }
        if let Some(v) = o.movement_depth {
            self.movement_depth = v;
        }
        if let Some(v) = o.drop_level1 {
            self.drop_level1 = v;
        }
        if let Some(v) = o.n_boot {
            self.n_boot = v;
        }
        if let Some(v) = o.ci_level {
            self.ci_level = v;
        }
        if let Some(v) = o.k_folds {
            self.k_folds = v;
        }
        if let Some(v) = o.c_reg {
            self.c_reg = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        self
    }

    fn feature_config(&self) -> FeatureConfig {
        FeatureConfig {
            speech_window_s: self.speech_window_s,
            movement_max_frames: self.movement_max_frames,
            fps: self.fps,
            speech_depth: self.speech_depth,
            movement_depth: self.movement_depth,
            drop_level1: self.drop_level1,
        }
    }
}

/// Which columns feed the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSet {
    /// The extracted interaction features.
    Interaction,
    /// Age and gender only, as a reference point.
    Demographics,
}

impl FeatureSet {
    pub fn parse(s: &str) -> Result<FeatureSet> {
        match s.to_ascii_lowercase().as_str() {
            "interaction" => Ok(FeatureSet::Interaction),
            "demographics" => Ok(FeatureSet::Demographics),
            _ => Err(Error::UnknownFeatureSet { got: s.to_string() }),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FeatureSet::Interaction => "interaction",
            FeatureSet::Demographics => "demographics",
        }
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Per-subject outcome of a feature extraction run.
#[derive(Debug, Clone, PartialEq)]
pub struct FeaturesOutcome {
    /// Subjects written to the matrix.
    pub n_subjects: usize,
    /// Subjects skipped with the reason, in id order.
    pub skipped: Vec<(String, String)>,
    /// Path of the matrix file.
    pub matrix_path: PathBuf,
}

/// Extracts features for every subject found under `segments_dir`,
/// writing `features.csv` into `out_dir`. Subjects whose inputs are
/// missing or malformed are skipped and reported, not fatal; an empty
/// result is an error.
pub fn run_features(
    segments_dir: &FsPath,
    tracks_dir: &FsPath,
    out_dir: &FsPath,
    cfg: &RunConfig,
) -> Result<FeaturesOutcome> {
    let ids = io::list_subject_ids(segments_dir)?;
    if ids.is_empty() {
        return Err(Error::NoSubjects);
    }
    let fcfg = cfg.feature_config();
    let results: Vec<(String, Result<FeatureVector>)> = ids
        .par_iter()
        .map(|id| {
            let features = io::read_session(segments_dir, tracks_dir, id)
                .and_then(|session| session_features(&session, &fcfg));
            (id.clone(), features)
        })
        .collect();

    let mut kept_ids = Vec::new();
    let mut vectors = Vec::new();
    let mut skipped = Vec::new();
    for (id, result) in results {
        match result {
            Ok(v) => {
                kept_ids.push(id);
                vectors.push(v);
            }
            Err(e) => skipped.push((id, e.to_string())),
        }
    }
    if vectors.is_empty() {
        return Err(Error::NoSubjects);
    }
    let matrix = FeatureMatrix::from_rows(kept_ids, vectors)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let matrix_path = out_dir.join("features.csv");
    io::write_feature_matrix(&matrix_path, &matrix)?;
    Ok(FeaturesOutcome {
        n_subjects: matrix.n_subjects(),
        skipped,
        matrix_path,
    })
}

/// Feature matrix and score records restricted to their shared subjects,
/// in ascending id order.
fn join_subjects(
    matrix: &FeatureMatrix,
    records: &[ScoreRecord],
) -> Result<(FeatureMatrix, Vec<ScoreRecord>)> {
    let mut pairs: Vec<(usize, &ScoreRecord)> = Vec::new();
    for (i, id) in matrix.subject_ids().iter().enumerate() {
        if let Some(rec) = records.iter().find(|r| &r.subject_id == id) {
            pairs.push((i, rec));
        }
    }
    if pairs.is_empty() {
        return Err(Error::NoCommonSubjects);
    }
    pairs.sort_by(|a, b| matrix.subject_ids()[a.0].cmp(&matrix.subject_ids()[b.0]));
    let keep: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
    let joined_records: Vec<ScoreRecord> = pairs.into_iter().map(|(_, r)| r.clone()).collect();
    Ok((matrix.select_subjects(&keep), joined_records))
}

/// Result of a correlation run.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelateOutcome {
    pub scale: Scale,
    pub n_subjects: usize,
    pub summaries: Vec<BootstrapSummary>,
    pub report_path: PathBuf,
}

/// Bootstraps feature-score correlations for one scale and writes
/// `correlate_<SCALE>.csv`.
pub fn run_correlate(
    matrix_path: &FsPath,
    scores_path: &FsPath,
    scale: Scale,
    out_dir: &FsPath,
    cfg: &RunConfig,
) -> Result<CorrelateOutcome> {
    let matrix = io::read_feature_matrix(matrix_path)?;
    let records = io::read_scores_csv(scores_path)?;
    let (matrix, records) = join_subjects(&matrix, &records)?;
    let target: Vec<f64> = records.iter().map(|r| r.score(scale) as f64).collect();
    // Mix the scale into the seed so each scale gets its own replicas.
    let seed = stream_seed(cfg.seed, 101, scale as u64);
    let summaries = bootstrap_correlations(&matrix, &target, cfg.n_boot, cfg.ci_level, seed)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let report_path = out_dir.join(format!("correlate_{}.csv", scale.name()));
    io::write_correlation_report(&report_path, &summaries)?;
    Ok(CorrelateOutcome {
        scale,
        n_subjects: matrix.n_subjects(),
        summaries,
        report_path,
    })
}

/// Result of a classification run.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOutcome {
    pub scale: Scale,
    pub feature_set: FeatureSet,
    pub n_subjects: usize,
    pub report: CvReport,
    pub auc_path: PathBuf,
    pub roc_path: PathBuf,
}

/// Cross-validates the classifier for one scale and writes
/// `classify_<SCALE>_<set>_auc.csv` and `classify_<SCALE>_<set>_roc.csv`.
pub fn run_classify(
    matrix_path: &FsPath,
    scores_path: &FsPath,
    scale: Scale,
    feature_set: FeatureSet,
    out_dir: &FsPath,
    cfg: &RunConfig,
) -> Result<ClassifyOutcome> {
    let matrix = io::read_feature_matrix(matrix_path)?;
    let records = io::read_scores_csv(scores_path)?;
    let (matrix, records) = join_subjects(&matrix, &records)?;
    let report = match feature_set {
        FeatureSet::Interaction => {
            let labels: Result<Vec<bool>> = records
                .iter()
                .map(|r| binarize(scale, r.score(scale)))
                .collect();
            kfold_cv(
                matrix.rows(),
                &labels?,
                scale,
                cfg.k_folds,
                cfg.c_reg,
                cfg.seed,
            )?
        }
        FeatureSet::Demographics => {
            demographics_baseline(&records, scale, cfg.k_folds, cfg.c_reg, cfg.seed)?
        }
    };
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let stem = format!("classify_{}_{}", scale.name(), feature_set.label());
    let auc_path = out_dir.join(format!("{stem}_auc.csv"));
    let roc_path = out_dir.join(format!("{stem}_roc.csv"));
    io::write_auc_report(&auc_path, &report)?;
    io::write_roc_report(&roc_path, &report)?;
    Ok(ClassifyOutcome {
        scale,
        feature_set,
        n_subjects: matrix.n_subjects(),
        report,
        auc_path,
        roc_path,
    })
}
