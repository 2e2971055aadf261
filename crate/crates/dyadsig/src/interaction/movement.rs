//! Movement paths and features from 2-D head-position tracks.
//!
//! Tracks are truncated to a frame window, then aligned on the frame
//! indices both people share. Two paths come out of one session: a 3-D
//! patient path `(x, y, t)` with `t = frame / fps`, and a 4-D joint path
//! `(x_p, y_p, x_c, y_c)` whose cross-words carry coordination between
//! the two people.

use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::interaction::speech::{logsig_features, Role};
use crate::signature::Path;

/// One sampled head position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackSample {
    pub frame: u64,
    pub x: f64,
    pub y: f64,
}

/// Head-position track for one person, frames strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadTrack {
    person: Role,
    samples: Vec<TrackSample>,
}

impl HeadTrack {
    pub fn new(person: Role, samples: Vec<TrackSample>) -> Result<HeadTrack> {
        for (index, s) in samples.iter().enumerate() {
            if !s.x.is_finite() || !s.y.is_finite() {
                return Err(Error::NonFinite {
                    context: "track coordinates",
                });
            }
            if index > 0 && s.frame <= samples[index - 1].frame {
                return Err(Error::FramesNotIncreasing {
                    person: person.label(),
                    frame: s.frame,
                    index,
                });
            }
        }
        Ok(HeadTrack { person, samples })
    }

    pub fn person(&self) -> Role {
        self.person
    }

    pub fn samples(&self) -> &[TrackSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Aligned movement paths for one session.
#[derive(Debug, Clone, PartialEq)]
pub struct MovementPaths {
    /// Patient path `(x, y, frame / fps)` over the aligned frames.
    pub patient: Path,
    /// Joint path `(x_p, y_p, x_c, y_c)` over the aligned frames.
    pub joint: Path,
    /// Patient positions within the frame window, before alignment; used
    /// for the position-spread statistics.
    pub patient_positions: Vec<(f64, f64)>,
}

/// Truncates both tracks to `frame < max_frames`, aligns them on shared
/// frame indices, and builds the patient and joint paths.
pub fn build_movement_paths(
    patient: &HeadTrack,
    clinician: &HeadTrack,
    max_frames: u64,
    fps: f64,
) -> Result<MovementPaths> {
    if max_frames == 0 {
        return Err(Error::InvalidParam("max_frames must be positive".into()));
    }
    if !(fps > 0.0) || !fps.is_finite() {
        return Err(Error::InvalidParam(format!(
            "fps must be positive and finite, got {fps}"
        )));
    }
    let p: Vec<&TrackSample> = patient
        .samples()
        .iter()
        .filter(|s| s.frame < max_frames)
        .collect();
    let c: Vec<&TrackSample> = clinician
        .samples()
        .iter()
        .filter(|s| s.frame < max_frames)
        .collect();
    if p.is_empty() {
        return Err(Error::EmptyTrack { person: "patient" });
    }
    if c.is_empty() {
        return Err(Error::EmptyTrack {
            person: "clinician",
        });
    }

    let mut solo = Vec::new();
    let mut joint = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < c.len() {
        if p[i].frame < c[j].frame {
            i += 1;
        } else if c[j].frame < p[i].frame {
            j += 1;
        } else {
            solo.extend_from_slice(&[p[i].x, p[i].y, p[i].frame as f64 / fps]);
            joint.extend_from_slice(&[p[i].x, p[i].y, c[j].x, c[j].y]);
            i += 1;
            j += 1;
        }
    }
    if solo.is_empty() {
        return Err(Error::UnalignableTracks);
    }
    Ok(MovementPaths {
        patient: Path::from_flat(3, solo)?,
        joint: Path::from_flat(4, joint)?,
        patient_positions: p.iter().map(|s| (s.x, s.y)).collect(),
    })
}

/// Movement feature block: patient position spread plus log-signatures of
/// the patient path (`video_p_*`) and the joint path (`video_joint_*`).
pub fn movement_features(paths: &MovementPaths, depth: usize) -> FeatureVector {
    let n = paths.patient_positions.len() as f64;
    let (mut mx, mut my) = (0.0, 0.0);
    for &(x, y) in &paths.patient_positions {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    let (mut vx, mut vy) = (0.0, 0.0);
    for &(x, y) in &paths.patient_positions {
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    let mut v = FeatureVector::new();
    v.push("x_p_std", (vx / n).sqrt());
    v.push("y_p_std", (vy / n).sqrt());
    v.extend(logsig_features(&paths.patient, depth, "video_p", false));
    v.extend(logsig_features(&paths.joint, depth, "video_joint", false));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn track(person: Role, rows: &[(u64, f64, f64)]) -> HeadTrack {
        HeadTrack::new(
            person,
            rows.iter()
                .map(|&(frame, x, y)| TrackSample { frame, x, y })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn frames_must_increase() {
        let err = HeadTrack::new(
            Role::Patient,
            vec![
                TrackSample { frame: 3, x: 0.0, y: 0.0 },
                TrackSample { frame: 3, x: 1.0, y: 1.0 },
            ],
        );
        assert!(matches!(err, Err(Error::FramesNotIncreasing { index: 1, .. })));
    }

    #[test]
    fn alignment_keeps_only_shared_frames() {
        let p = track(Role::Patient, &[(0, 1.0, 2.0), (1, 3.0, 4.0), (3, 5.0, 6.0)]);
        let c = track(Role::Clinician, &[(1, 9.0, 8.0), (2, 7.0, 6.0), (3, 5.0, 4.0)]);
        let paths = build_movement_paths(&p, &c, 100, 10.0).unwrap();
        assert_eq!(paths.patient.len(), 2);
        assert_eq!(paths.joint.len(), 2);
        assert_eq!(paths.patient.point(0), &[3.0, 4.0, 0.1]);
        assert_eq!(paths.joint.point(1), &[5.0, 6.0, 5.0, 4.0]);
        // spread statistics still see the unaligned frame 0
        assert_eq!(paths.patient_positions.len(), 3);
    }

    #[test]
    fn stationary_patient_time_axis_spans_frames_over_fps() {
        let rows: Vec<(u64, f64, f64)> = (0..10).map(|f| (f, 2.0, 3.0)).collect();
        let p = track(Role::Patient, &rows);
        let c = track(Role::Clinician, &rows);
        let paths = build_movement_paths(&p, &c, 10_000, 15.0).unwrap();
        let disp = paths.patient.total_displacement();
        assert_eq!(disp[0], 0.0);
        assert_eq!(disp[1], 0.0);
        assert_eq!(disp[2], 9.0 / 15.0);
    }

    #[test]
    fn truncation_drops_late_frames() {
        let p = track(Role::Patient, &[(0, 0.0, 0.0), (5, 1.0, 1.0), (20, 9.0, 9.0)]);
        let c = track(Role::Clinician, &[(0, 0.0, 0.0), (5, 2.0, 2.0), (20, 9.0, 9.0)]);
        let paths = build_movement_paths(&p, &c, 10, 10.0).unwrap();
        assert_eq!(paths.patient.len(), 2);
        assert_eq!(paths.patient_positions, vec![(0.0, 0.0), (1.0, 1.0)]);
    }

    #[test]
    fn disjoint_tracks_cannot_align() {
        let p = track(Role::Patient, &[(0, 0.0, 0.0), (2, 1.0, 1.0)]);
        let c = track(Role::Clinician, &[(1, 0.0, 0.0), (3, 1.0, 1.0)]);
        assert!(matches!(
            build_movement_paths(&p, &c, 100, 10.0),
            Err(Error::UnalignableTracks)
        ));
    }

    #[test]
    fn empty_window_is_reported_per_person() {
        let p = track(Role::Patient, &[(50, 0.0, 0.0)]);
        let c = track(Role::Clinician, &[(0, 0.0, 0.0)]);
        assert!(matches!(
            build_movement_paths(&p, &c, 10, 10.0),
            Err(Error::EmptyTrack { person: "patient" })
        ));
    }

    #[test]
    fn feature_block_has_expected_names_and_size() {
        let rows: Vec<(u64, f64, f64)> =
            (0..8).map(|f| (f, f as f64 * 0.5, 4.0 - f as f64 * 0.25)).collect();
        let p = track(Role::Patient, &rows);
        let c = track(Role::Clinician, &rows);
        let paths = build_movement_paths(&p, &c, 100, 15.0).unwrap();
        let v = movement_features(&paths, 3);
        // 2 spread stats + 14 patient-path + 30 joint-path coordinates
        assert_eq!(v.len(), 46);
        assert_eq!(v.names()[0], "x_p_std");
        assert_eq!(v.names()[2], "video_p_L1_1");
        assert!(v.names().iter().skip(16).all(|n| n.starts_with("video_joint_L")));
    }

    #[test]
    fn spread_matches_hand_computation() {
        let p = track(Role::Patient, &[(0, 0.0, 5.0), (1, 2.0, 5.0), (2, 4.0, 5.0)]);
        let c = track(Role::Clinician, &[(0, 0.0, 0.0), (1, 0.0, 0.0), (2, 0.0, 0.0)]);
        let paths = build_movement_paths(&p, &c, 100, 10.0).unwrap();
        let v = movement_features(&paths, 2);
        let expected_x = (8.0f64 / 3.0).sqrt();
        assert!((v.get("x_p_std").unwrap() - expected_x).abs() < 1e-15);
        assert_eq!(v.get("y_p_std"), Some(0.0));
    }
}
