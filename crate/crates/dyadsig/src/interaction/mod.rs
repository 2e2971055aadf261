//! Session-level feature assembly from speech and movement recordings.

mod movement;
mod speech;

pub use movement::{build_movement_paths, movement_features, HeadTrack, MovementPaths, TrackSample};
pub use speech::{
    build_turn_path, speech_logsig_features, speech_stats, Role, SpeechSegment, TurnPath,
    SPEECH_STAT_NAMES,
};

use crate::error::Result;
use crate::features::FeatureVector;

/// Raw recordings for one subject's session.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionData {
    pub segments: Vec<SpeechSegment>,
    pub patient_track: HeadTrack,
    pub clinician_track: HeadTrack,
}

/// Windowing and depth settings for feature extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureConfig {
    /// Speech analysis window in seconds.
    pub speech_window_s: f64,
    /// Number of leading video frames to keep.
    pub movement_max_frames: u64,
    /// Video sampling rate used to convert frames to seconds.
    pub fps: f64,
    /// Log-signature truncation depth for the turn path.
    pub speech_depth: usize,
    /// Log-signature truncation depth for both movement paths.
    pub movement_depth: usize,
    /// Drop the three length-1 turn-path coordinates that duplicate the
    /// speaking-time totals.
    pub drop_level1: bool,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            speech_window_s: 2400.0,
            movement_max_frames: 10_000,
            fps: 15.0,
            speech_depth: 4,
            movement_depth: 3,
            drop_level1: false,
        }
    }
}

/// Full interaction feature vector for one session: 16 turn statistics,
/// turn-path log-signature, position spread, movement log-signatures.
pub fn session_features(session: &SessionData, cfg: &FeatureConfig) -> Result<FeatureVector> {
    let mut v = speech_stats(&session.segments, cfg.speech_window_s)?;
    let turn_path = build_turn_path(&session.segments, cfg.speech_window_s)?;
    v.extend(speech_logsig_features(
        &turn_path,
        cfg.speech_depth,
        cfg.drop_level1,
    ));
    let paths = build_movement_paths(
        &session.patient_track,
        &session.clinician_track,
        cfg.movement_max_frames,
        cfg.fps,
    )?;
    v.extend(movement_features(&paths, cfg.movement_depth));
    v.validate()?;
    Ok(v)
}
