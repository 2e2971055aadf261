//! Turn-taking paths and summary statistics from diarized speech.
//!
//! A session is a sorted, non-overlapping list of speech segments for two
//! speakers. Inside a fixed analysis window the session decomposes into
//! maximal intervals of silence, clinician speech, and patient speech; the
//! turn path walks a 3-D staircase that advances the matching coordinate
//! (silence, clinician, patient) by each interval's duration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::signature::{log_signature_in, LyndonBasis, Path};

/// Who produced a speech segment or a head track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Patient,
    Clinician,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Patient => "patient",
            Role::Clinician => "clinician",
        }
    }
}

/// One diarized speech segment in session seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeechSegment {
    pub start_s: f64,
    pub end_s: f64,
    pub speaker: Role,
}

/// 3-D staircase path whose coordinates accumulate silence, clinician,
/// and patient time, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct TurnPath {
    path: Path,
}

impl TurnPath {
    pub fn as_path(&self) -> &Path {
        &self.path
    }

    /// Silence, clinician, patient axis indices.
    pub const SILENCE: usize = 0;
    pub const CLINICIAN: usize = 1;
    pub const PATIENT: usize = 2;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IntervalKind {
    Silence,
    Clinician,
    Patient,
}

impl IntervalKind {
    fn axis(self) -> usize {
        match self {
            IntervalKind::Silence => TurnPath::SILENCE,
            IntervalKind::Clinician => TurnPath::CLINICIAN,
            IntervalKind::Patient => TurnPath::PATIENT,
        }
    }
}

/// Maximal constant-state intervals covering `[0, window_s]`.
///
/// Durations are differences of absolute times, so interval lengths sum
/// back to the window exactly when the inputs are exactly representable.
fn session_intervals(
    segments: &[SpeechSegment],
    window_s: f64,
) -> Result<Vec<(IntervalKind, f64)>> {
    if !(window_s > 0.0) || !window_s.is_finite() {
        return Err(Error::InvalidWindow { got: window_s });
    }
    let mut intervals = Vec::with_capacity(segments.len() * 2 + 1);
    // `cursor` tracks absolute time for order validation; `covered` only
    // advances for in-window speech, so trailing silence is measured
    // against the window even when later segments fall outside it.
    let mut cursor = 0.0;
    let mut covered = 0.0;
    for (index, seg) in segments.iter().enumerate() {
        if !seg.start_s.is_finite() || !seg.end_s.is_finite() {
            return Err(Error::NonFinite {
                context: "segment bounds",
            });
        }
        if seg.start_s < 0.0 || seg.end_s <= seg.start_s {
            return Err(Error::InvalidSegment {
                index,
                start_s: seg.start_s,
                end_s: seg.end_s,
            });
        }
        if seg.start_s < cursor {
            return Err(Error::OverlappingSegments {
                index,
                prev_end_s: cursor,
                next_start_s: seg.start_s,
            });
        }
        cursor = seg.end_s;
        if seg.start_s >= window_s {
            continue;
        }
        if seg.start_s > covered {
            intervals.push((IntervalKind::Silence, seg.start_s - covered));
        }
        let clipped_end = seg.end_s.min(window_s);
        let kind = match seg.speaker {
            Role::Patient => IntervalKind::Patient,
            Role::Clinician => IntervalKind::Clinician,
        };
        intervals.push((kind, clipped_end - seg.start_s));
        covered = clipped_end;
    }
    if covered < window_s {
        intervals.push((IntervalKind::Silence, window_s - covered));
    }
    Ok(intervals)
}

/// Builds the 3-D turn path for the session window.
///
/// Every step advances exactly one coordinate by a positive duration, so
/// each coordinate is non-decreasing and their sum reaches `window_s`.
pub fn build_turn_path(segments: &[SpeechSegment], window_s: f64) -> Result<TurnPath> {
    let intervals = session_intervals(segments, window_s)?;
    let mut data = Vec::with_capacity((intervals.len() + 1) * 3);
    data.extend_from_slice(&[0.0, 0.0, 0.0]);
    let mut point = [0.0, 0.0, 0.0];
    for (kind, duration) in intervals {
        point[kind.axis()] += duration;
        data.extend_from_slice(&point);
    }
    Ok(TurnPath {
        path: Path::from_flat(3, data)?,
    })
}

/// Names of the 16 turn-taking statistics, in output order. The prefixes
/// are patient (`p`), clinician (`c`), and silence (`s`); `cnt` counts
/// intervals, `crel` is the count share, `t` total seconds, `r` the share
/// of the window, and `mean`/`std` summarize interval durations.
pub const SPEECH_STAT_NAMES: [&str; 16] = [
    "p_cnt", "c_cnt", "s_cnt", "p_crel", "c_crel", "s_crel", "p_t", "c_t", "s_t", "p_r", "c_r",
    "s_r", "p_mean", "p_std", "c_mean", "c_std",
];

/// Turn-taking statistics over the analysis window.
pub fn speech_stats(segments: &[SpeechSegment], window_s: f64) -> Result<FeatureVector> {
    let intervals = session_intervals(segments, window_s)?;
    let mut durations: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (kind, duration) in &intervals {
        durations[kind.axis()].push(*duration);
    }
    let count = |axis: usize| durations[axis].len() as f64;
    let total = |axis: usize| durations[axis].iter().sum::<f64>();
    let n_all = intervals.len() as f64;

    let mut v = FeatureVector::with_capacity(16);
    let (p, c, s) = (TurnPath::PATIENT, TurnPath::CLINICIAN, TurnPath::SILENCE);
    v.push("p_cnt", count(p));
    v.push("c_cnt", count(c));
    v.push("s_cnt", count(s));
    v.push("p_crel", count(p) / n_all);
    v.push("c_crel", count(c) / n_all);
    v.push("s_crel", count(s) / n_all);
    v.push("p_t", total(p));
    v.push("c_t", total(c));
    v.push("s_t", total(s));
    v.push("p_r", total(p) / window_s);
    v.push("c_r", total(c) / window_s);
    v.push("s_r", total(s) / window_s);
    let (p_mean, p_std) = mean_std(&durations[p]);
    let (c_mean, c_std) = mean_std(&durations[c]);
    v.push("p_mean", p_mean);
    v.push("p_std", p_std);
    v.push("c_mean", c_mean);
    v.push("c_std", c_std);
    Ok(v)
}

/// Mean and population standard deviation; both zero for an empty list.
fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Log-signature features of the turn path, named `speech_path_L<len>_<word>`.
/// With `drop_level1` the three length-1 coordinates are omitted because
/// they repeat the total durations already present in the statistics.
pub fn speech_logsig_features(
    turn_path: &TurnPath,
    depth: usize,
    drop_level1: bool,
) -> FeatureVector {
    logsig_features(turn_path.as_path(), depth, "speech_path", drop_level1)
}

/// Shared naming scheme for log-signature feature blocks.
pub(crate) fn logsig_features(
    path: &Path,
    depth: usize,
    prefix: &str,
    drop_level1: bool,
) -> FeatureVector {
    let basis = LyndonBasis::new(path.dim(), depth);
    let ls = log_signature_in(path, &basis);
    let mut v = FeatureVector::with_capacity(ls.len());
    for (word, &coord) in ls.words().iter().zip(ls.coords()) {
        if drop_level1 && word.len() == 1 {
            continue;
        }
        v.push(format!("{prefix}_L{}_{}", word.len(), word), coord);
    }
    v
}
