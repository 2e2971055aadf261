//! Synthetic interaction cohorts with a controllable ability effect.
//!
//! Each subject gets a latent ability drawn once from a standard normal.
//! Ability feeds the session through deterministic gains: higher ability
//! means longer patient turns, quicker responses, steadier head movement,
//! tighter clinician coupling, and higher test scores. All noise comes
//! from per-subject streams that do not depend on `effect_size`, so
//! raising the effect only amplifies those gains. That makes the link
//! between behavior and scores strengthen monotonically with the effect,
//! which the validation suite leans on.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::classifier::{Gender, Scale, ScoreRecord};
use crate::error::{Error, Result};
use crate::interaction::{HeadTrack, Role, SessionData, SpeechSegment, TrackSample};
use crate::rng::{
    stream_rng, STREAM_ABILITY, STREAM_DEMOGRAPHICS, STREAM_MOVEMENT, STREAM_SCORES,
    STREAM_SPEECH,
};

/// Knobs for cohort generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CohortSpec {
    pub n_subjects: usize,
    pub seed: u64,
    /// Strength of the ability effect on behavior; 0 severs the link.
    pub effect_size: f64,
    /// Recorded session length in seconds.
    pub session_s: f64,
    /// Video sampling rate.
    pub fps: f64,
    /// Video frames per subject.
    pub n_frames: u64,
    /// Noise mixed into scores relative to ability's unit variance.
    pub score_noise_sd: f64,
}

impl Default for CohortSpec {
    fn default() -> Self {
        CohortSpec {
            n_subjects: 40,
            seed: 0,
            effect_size: 1.0,
            session_s: 2400.0,
            fps: 15.0,
            n_frames: 10_000,
            score_noise_sd: 0.5,
        }
    }
}

impl CohortSpec {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidCohortSpec(msg));
        if self.n_subjects < 8 {
            return fail(format!(
                "need at least 8 subjects for downstream splits, got {}",
                self.n_subjects
            ));
        }
        if !(self.effect_size >= 0.0) || !self.effect_size.is_finite() {
            return fail(format!("effect_size must be finite and >= 0, got {}", self.effect_size));
        }
        if !(self.session_s > 0.0) || !self.session_s.is_finite() {
            return fail(format!("session_s must be positive, got {}", self.session_s));
        }
        if !(self.fps > 0.0) || !self.fps.is_finite() {
            return fail(format!("fps must be positive, got {}", self.fps));
        }
        if self.n_frames < 8 {
            return fail(format!("need at least 8 frames, got {}", self.n_frames));
        }
        if !(self.score_noise_sd >= 0.0) || !self.score_noise_sd.is_finite() {
            return fail(format!(
                "score_noise_sd must be finite and >= 0, got {}",
                self.score_noise_sd
            ));
        }
        Ok(())
    }
}

/// One generated subject: recordings plus outcome scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Subject {
    pub id: String,
    pub session: SessionData,
    pub scores: ScoreRecord,
}

/// Generated cohort, subjects ordered by id.
#[derive(Debug, Clone, PartialEq)]
pub struct Cohort {
    pub subjects: Vec<Subject>,
}

/// Generates a cohort; the same spec always yields the same cohort.
pub fn generate_cohort(spec: &CohortSpec) -> Result<Cohort> {
    spec.validate()?;
    let subjects = (0..spec.n_subjects)
        .into_par_iter()
        .map(|i| generate_subject(spec, i as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cohort { subjects })
}

fn generate_subject(spec: &CohortSpec, i: u64) -> Result<Subject> {
    let ability: f64 = StandardNormal.sample(&mut stream_rng(spec.seed, STREAM_ABILITY, i));
    let id = format!("s{i:04}");
    let segments = generate_segments(spec, i, ability);
    let (patient_track, clinician_track) = generate_tracks(spec, i, ability)?;
    let scores = generate_scores(spec, i, ability, &id);
    Ok(Subject {
        id,
        session: SessionData {
            segments,
            patient_track,
            clinician_track,
        },
        scores,
    })
}

fn lognormal(rng: &mut impl Rng, sigma: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    (sigma * z).exp()
}

/// Alternating clinician prompt, response latency, patient turn, pause.
/// Every cycle consumes the same four draws, so the noise sequence is
/// shared across effect sizes.
fn generate_segments(spec: &CohortSpec, i: u64, ability: f64) -> Vec<SpeechSegment> {
    let mut rng = stream_rng(spec.seed, STREAM_SPEECH, i);
    let e = spec.effect_size;
    let verbosity = (0.35 * e * ability).exp();
    let promptness = (-0.30 * e * ability).exp();
    let mut segments = Vec::new();
    let mut t = 0.0;
    while t < spec.session_s {
        let c_dur = (5.0 * lognormal(&mut rng, 0.35)).clamp(0.5, 30.0);
        let c_end = (t + c_dur).min(spec.session_s);
        segments.push(SpeechSegment {
            start_s: t,
            end_s: c_end,
            speaker: Role::Clinician,
        });
        t += c_dur;
        if t >= spec.session_s {
            break;
        }
        let latency = (1.5 * promptness * lognormal(&mut rng, 0.5)).clamp(0.05, 20.0);
        t += latency;
        if t >= spec.session_s {
            break;
        }
        let p_dur = (4.0 * verbosity * lognormal(&mut rng, 0.4)).clamp(0.3, 60.0);
        let p_end = (t + p_dur).min(spec.session_s);
        segments.push(SpeechSegment {
            start_s: t,
            end_s: p_end,
            speaker: Role::Patient,
        });
        t += p_dur;
        let pause = lognormal(&mut rng, 0.5).clamp(0.05, 15.0);
        t += pause;
    }
    segments
}

/// Mean-reverting head jitter around fixed seat positions. Patient
/// amplitude shrinks with ability; the clinician mirrors the patient's
/// jitter a few frames late, more strongly for higher ability.
fn generate_tracks(spec: &CohortSpec, i: u64, ability: f64) -> Result<(HeadTrack, HeadTrack)> {
    let mut rng = stream_rng(spec.seed, STREAM_MOVEMENT, i);
    let e = spec.effect_size;
    let phi: f64 = 0.97;
    let innovation = (1.0 - phi * phi).sqrt();
    let sigma_p = 6.0 * (-0.25 * e * ability).exp();
    let sigma_c = 3.0;
    let coupling = 0.35 / (1.0 + (-e * ability).exp());
    const LAG: usize = 3;

    let (mut px, mut py, mut cx, mut cy) = (0.0, 0.0, 0.0, 0.0);
    let mut lagged = std::collections::VecDeque::from(vec![(0.0, 0.0); LAG]);
    let mut patient = Vec::with_capacity(spec.n_frames as usize);
    let mut clinician = Vec::with_capacity(spec.n_frames as usize);
    for frame in 0..spec.n_frames {
        let zx: f64 = StandardNormal.sample(&mut rng);
        let zy: f64 = StandardNormal.sample(&mut rng);
        let wx: f64 = StandardNormal.sample(&mut rng);
        let wy: f64 = StandardNormal.sample(&mut rng);
        px = phi * px + innovation * sigma_p * zx;
        py = phi * py + innovation * sigma_p * zy;
        cx = phi * cx + innovation * sigma_c * wx;
        cy = phi * cy + innovation * sigma_c * wy;
        let (dx, dy) = lagged.pop_front().expect("buffer holds LAG entries");
        lagged.push_back((px, py));
        patient.push(TrackSample {
            frame,
            x: 180.0 + px,
            y: 240.0 + py,
        });
        clinician.push(TrackSample {
            frame,
            x: 460.0 + cx + coupling * dx,
            y: 240.0 + cy + coupling * dy,
        });
    }
    Ok((
        HeadTrack::new(Role::Patient, patient)?,
        HeadTrack::new(Role::Clinician, clinician)?,
    ))
}

/// Scores share the subject's ability plus independent noise, normalized
/// so each scale keeps its population mean and standard deviation.
fn generate_scores(spec: &CohortSpec, i: u64, ability: f64, id: &str) -> ScoreRecord {
    let mut rng = stream_rng(spec.seed, STREAM_SCORES, i);
    let denom = (1.0 + spec.score_noise_sd * spec.score_noise_sd).sqrt();
    let mut sample = |scale: Scale| {
        let eps: f64 = StandardNormal.sample(&mut rng);
        let z = (ability + spec.score_noise_sd * eps) / denom;
        let (mean, sd) = scale.norm();
        let (lo, hi) = scale.range();
        ((mean + sd * z).round() as i32).clamp(lo, hi)
    };
    let wisc = sample(Scale::Wisc);
    let tea = sample(Scale::Tea);
    let nepsy = sample(Scale::Nepsy);
    let celf = sample(Scale::Celf);

    let mut demo_rng = stream_rng(spec.seed, STREAM_DEMOGRAPHICS, i);
    let age_z: f64 = StandardNormal.sample(&mut demo_rng);
    let age_years = ((10.0 + 3.0 * age_z) * 4.0).round() / 4.0;
    let age_years = age_years.clamp(5.0, 17.0);
    let gender = if demo_rng.random::<f64>() < 0.63 {
        Gender::Male
    } else {
        Gender::Female
    };
    ScoreRecord {
        subject_id: id.to_string(),
        wisc,
        tea,
        nepsy,
        celf,
        age_years,
        gender,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::build_turn_path;
    use crate::stats::spearman;

    fn small_spec(effect: f64) -> CohortSpec {
        CohortSpec {
            n_subjects: 30,
            seed: 42,
            effect_size: effect,
            session_s: 300.0,
            n_frames: 600,
            ..CohortSpec::default()
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_cohort(&small_spec(1.0)).unwrap();
        let b = generate_cohort(&small_spec(1.0)).unwrap();
        assert_eq!(a, b);
        let c = generate_cohort(&CohortSpec {
            seed: 43,
            ..small_spec(1.0)
        })
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sessions_are_well_formed() {
        let cohort = generate_cohort(&small_spec(1.5)).unwrap();
        for s in &cohort.subjects {
            // sorted, non-overlapping, inside the session: the turn-path
            // builder enforces all three
            build_turn_path(&s.session.segments, 300.0).unwrap();
            assert!(s.session.segments.len() > 4, "too few segments");
            for seg in &s.session.segments {
                assert!(seg.end_s <= 300.0 + 1e-9);
            }
            assert_eq!(s.session.patient_track.len(), 600);
            assert_eq!(s.session.clinician_track.len(), 600);
        }
    }

    #[test]
    fn scores_stay_in_range_and_near_population_norms() {
        let spec = CohortSpec {
            n_subjects: 400,
            seed: 7,
            session_s: 60.0,
            n_frames: 16,
            ..CohortSpec::default()
        };
        let cohort = generate_cohort(&spec).unwrap();
        let wisc: Vec<f64> = cohort.subjects.iter().map(|s| s.scores.wisc as f64).collect();
        let tea: Vec<f64> = cohort.subjects.iter().map(|s| s.scores.tea as f64).collect();
        for s in &cohort.subjects {
            assert!((40..=160).contains(&s.scores.wisc));
            for v in [s.scores.tea, s.scores.nepsy, s.scores.celf] {
                assert!((1..=19).contains(&v));
            }
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let sd = |v: &[f64]| {
            let m = mean(v);
            (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64).sqrt()
        };
        assert!((mean(&wisc) - 100.0).abs() < 15.0 * 0.15, "wisc mean {}", mean(&wisc));
        assert!((sd(&wisc) - 15.0).abs() < 15.0 * 0.15, "wisc sd {}", sd(&wisc));
        assert!((mean(&tea) - 10.0).abs() < 3.0 * 0.15, "tea mean {}", mean(&tea));
        assert!((sd(&tea) - 3.0).abs() < 3.0 * 0.15, "tea sd {}", sd(&tea));

        let males = cohort
            .subjects
            .iter()
            .filter(|s| s.scores.gender == Gender::Male)
            .count() as f64;
        let male_share = males / 400.0;
        assert!((male_share - 0.63).abs() < 0.08, "male share {male_share}");
        let ages: Vec<f64> = cohort.subjects.iter().map(|s| s.scores.age_years).collect();
        assert!((mean(&ages) - 10.0).abs() < 0.6, "age mean {}", mean(&ages));
    }

    #[test]
    fn effect_strengthens_turn_length_score_link() {
        let mut last = -1.0;
        for effect in [0.0, 0.5, 1.0, 2.0] {
            let spec = CohortSpec {
                n_subjects: 200,
                seed: 11,
                effect_size: effect,
                session_s: 600.0,
                n_frames: 16,
                ..CohortSpec::default()
            };
            let cohort = generate_cohort(&spec).unwrap();
            let mean_turn: Vec<f64> = cohort
                .subjects
                .iter()
                .map(|s| {
                    let patient: Vec<f64> = s
                        .session
                        .segments
                        .iter()
                        .filter(|seg| seg.speaker == Role::Patient)
                        .map(|seg| seg.end_s - seg.start_s)
                        .collect();
                    patient.iter().sum::<f64>() / patient.len() as f64
                })
                .collect();
            let wisc: Vec<f64> = cohort.subjects.iter().map(|s| s.scores.wisc as f64).collect();
            let rho = spearman(&mean_turn, &wisc).unwrap();
            assert!(
                rho >= last - 0.02,
                "correlation fell from {last} to {rho} at effect {effect}"
            );
            if effect == 0.0 {
                assert!(rho.abs() < 0.2, "effect 0 leaked correlation {rho}");
            }
            last = rho;
        }
        assert!(last > 0.6, "effect 2 correlation only {last}");
    }

    #[test]
    fn zero_effect_decouples_movement_from_ability() {
        let a = generate_cohort(&small_spec(0.0)).unwrap();
        // with effect 0 the gains collapse to 1, so subjects differ only
        // through their noise streams
        let spread = |s: &Subject| {
            let xs: Vec<f64> = s
                .session
                .patient_track
                .samples()
                .iter()
                .map(|t| t.x)
                .collect();
            let m = xs.iter().sum::<f64>() / xs.len() as f64;
            (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
        };
        let spreads: Vec<f64> = a.subjects.iter().map(spread).collect();
        let wisc: Vec<f64> = a.subjects.iter().map(|s| s.scores.wisc as f64).collect();
        let rho = spearman(&spreads, &wisc).unwrap();
        assert!(rho.abs() < 0.45, "unexpected coupling {rho}");
    }

    #[test]
    fn bad_specs_are_rejected() {
        for spec in [
            CohortSpec { n_subjects: 3, ..CohortSpec::default() },
            CohortSpec { effect_size: -1.0, ..CohortSpec::default() },
            CohortSpec { session_s: 0.0, ..CohortSpec::default() },
            CohortSpec { fps: -15.0, ..CohortSpec::default() },
            CohortSpec { score_noise_sd: f64::NAN, ..CohortSpec::default() },
        ] {
            assert!(matches!(
                generate_cohort(&spec),
                Err(Error::InvalidCohortSpec(_))
            ));
        }
    }
}
