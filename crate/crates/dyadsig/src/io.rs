//! On-disk formats for cohorts, feature matrices, and reports.
//!
//! Layout of a cohort directory:
//!
//! ```text
//! data/
//!   segments/<subject_id>.jsonl   one speech segment object per line
//!   tracks/<subject_id>.csv       frame,person,x,y for both people
//!   scores.csv                    subject_id,wisc,tea,nepsy,celf,age_years,gender
//! ```
//!
//! Feature matrices and statistical reports print floats with 17
//! significant digits, enough to round-trip f64 exactly, so repeated runs
//! with one seed produce byte-identical files.

use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader, Write as _};
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::classifier::{score_band, CvReport, ScoreRecord, Scale};
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::interaction::{HeadTrack, Role, SessionData, SpeechSegment, TrackSample};
use crate::stats::BootstrapSummary;
use crate::synth::Cohort;

/// Fixed-precision float encoding used in feature and report files.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_float(path: &FsPath, line: usize, field: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::format(path, line, format!("cannot parse {field} value {s:?}")))
}

/// Writes one segment object per line.
pub fn write_segments_file(path: &FsPath, segments: &[SpeechSegment]) -> Result<()> {
    let mut out = String::new();
    for seg in segments {
        out.push_str(&serde_json::to_string(seg).expect("segments serialize"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Reads a segments file, one JSON object per line, blank lines ignored.
pub fn read_segments_file(path: &FsPath) -> Result<Vec<SpeechSegment>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut segments = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let seg: SpeechSegment = serde_json::from_str(&line)
            .map_err(|e| Error::format(path, i + 1, e.to_string()))?;
        segments.push(seg);
    }
    Ok(segments)
}

#[derive(Serialize, Deserialize)]
struct TrackRow {
    frame: u64,
    person: Role,
    x: f64,
    y: f64,
}

/// Writes both people's tracks as one CSV, patient rows first.
pub fn write_tracks_file(path: &FsPath, patient: &HeadTrack, clinician: &HeadTrack) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for track in [patient, clinician] {
        for s in track.samples() {
            w.serialize(TrackRow {
                frame: s.frame,
                person: track.person(),
                x: s.x,
                y: s.y,
            })
            .map_err(|e| csv_error(path, e))?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Reads a two-person track file; rows may be grouped or interleaved but
/// frames must increase within each person.
pub fn read_tracks_file(path: &FsPath) -> Result<(HeadTrack, HeadTrack)> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut patient = Vec::new();
    let mut clinician = Vec::new();
    for row in r.deserialize::<TrackRow>() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let sample = TrackSample {
            frame: row.frame,
            x: row.x,
            y: row.y,
        };
        match row.person {
            Role::Patient => patient.push(sample),
            Role::Clinician => clinician.push(sample),
        }
    }
    if patient.is_empty() {
        return Err(Error::format(path, 0, "no patient rows"));
    }
    if clinician.is_empty() {
        return Err(Error::format(path, 0, "no clinician rows"));
    }
    Ok((
        HeadTrack::new(Role::Patient, patient)?,
        HeadTrack::new(Role::Clinician, clinician)?,
    ))
}

/// Writes the score table.
pub fn write_scores_csv(path: &FsPath, records: &[ScoreRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for rec in records {
        w.serialize(rec).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Reads the score table, checking ids are unique and every score sits in
/// its scale's published range.
pub fn read_scores_csv(path: &FsPath) -> Result<Vec<ScoreRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (i, row) in r.deserialize::<ScoreRecord>().enumerate() {
        let rec = row.map_err(|e| csv_error(path, e))?;
        if !seen.insert(rec.subject_id.clone()) {
            return Err(Error::format(
                path,
                i + 2,
                format!("duplicate subject_id {:?}", rec.subject_id),
            ));
        }
        for scale in Scale::ALL {
            score_band(scale, rec.score(scale))?;
        }
        if !rec.age_years.is_finite() {
            return Err(Error::format(path, i + 2, "age_years is not finite"));
        }
        records.push(rec);
    }
    Ok(records)
}

/// Reads one subject's recordings from a cohort directory pair.
pub fn read_session(segments_dir: &FsPath, tracks_dir: &FsPath, id: &str) -> Result<SessionData> {
    let segments = read_segments_file(&segments_dir.join(format!("{id}.jsonl")))?;
    let (patient_track, clinician_track) = read_tracks_file(&tracks_dir.join(format!("{id}.csv")))?;
    Ok(SessionData {
        segments,
        patient_track,
        clinician_track,
    })
}

/// Subject ids with a segments file, sorted; the id is the file stem.
pub fn list_subject_ids(segments_dir: &FsPath) -> Result<Vec<String>> {
    let entries = fs::read_dir(segments_dir).map_err(|e| Error::io(segments_dir, e))?;
    let mut ids = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(segments_dir, e))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) == Some("jsonl") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                ids.push(stem.to_string());
            }
        }
    }
    ids.sort();
    Ok(ids)
}

/// Writes a full cohort directory: segments, tracks, and scores.
pub fn write_cohort(dir: &FsPath, cohort: &Cohort) -> Result<()> {
    let segments_dir = dir.join("segments");
    let tracks_dir = dir.join("tracks");
    fs::create_dir_all(&segments_dir).map_err(|e| Error::io(&segments_dir, e))?;
    fs::create_dir_all(&tracks_dir).map_err(|e| Error::io(&tracks_dir, e))?;
    for s in &cohort.subjects {
        write_segments_file(&segments_dir.join(format!("{}.jsonl", s.id)), &s.session.segments)?;
        write_tracks_file(
            &tracks_dir.join(format!("{}.csv", s.id)),
            &s.session.patient_track,
            &s.session.clinician_track,
        )?;
    }
    let records: Vec<ScoreRecord> = cohort.subjects.iter().map(|s| s.scores.clone()).collect();
    write_scores_csv(&dir.join("scores.csv"), &records)
}

/// Writes the subjects-by-features matrix with a `subject_id` first column.
pub fn write_feature_matrix(path: &FsPath, matrix: &FeatureMatrix) -> Result<()> {
    let mut out = String::new();
    out.push_str("subject_id");
    for name in matrix.feature_names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (id, row) in matrix.subject_ids().iter().zip(matrix.rows()) {
        out.push_str(id);
        for &v in row {
            out.push(',');
            out.push_str(&fmt_float(v));
        }
        out.push('\n');
    }
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
}

/// Reads a feature matrix written by `write_feature_matrix`.
pub fn read_feature_matrix(path: &FsPath) -> Result<FeatureMatrix> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let headers = r.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.get(0) != Some("subject_id") {
        return Err(Error::format(path, 1, "first column must be subject_id"));
    }
    let names: Vec<String> = headers.iter().skip(1).map(|s| s.to_string()).collect();
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        if record.len() != names.len() + 1 {
            return Err(Error::format(
                path,
                i + 2,
                format!("expected {} fields, found {}", names.len() + 1, record.len()),
            ));
        }
        ids.push(record[0].to_string());
        let mut row = Vec::with_capacity(names.len());
        for (j, field) in record.iter().skip(1).enumerate() {
            row.push(parse_float(path, i + 2, &names[j], field)?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::NoSubjects);
    }
    Ok(FeatureMatrix::from_parts(names, ids, rows))
}

/// Writes the sorted bootstrap correlation table.
pub fn write_correlation_report(path: &FsPath, summaries: &[BootstrapSummary]) -> Result<()> {
    let mut out = String::from(
        "feature,point_rho,boot_mean,ci_low,ci_high,n_boot,n_skipped,significant\n",
    );
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            s.feature_name,
            fmt_float(s.point_rho),
            fmt_float(s.boot_mean),
            fmt_float(s.ci_low),
            fmt_float(s.ci_high),
            s.n_boot,
            s.n_skipped,
            s.significant,
        ));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Writes per-fold AUC rows plus mean and std summary rows.
pub fn write_auc_report(path: &FsPath, report: &CvReport) -> Result<()> {
    let mut out = String::from("fold,auc\n");
    for (i, auc) in report.per_fold_auc.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i, fmt_float(*auc)));
    }
    out.push_str(&format!("mean,{}\n", fmt_float(report.auc_mean)));
    out.push_str(&format!("std,{}\n", fmt_float(report.auc_std)));
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Writes every fold's ROC step curve as `fold,fpr,tpr` rows.
pub fn write_roc_report(path: &FsPath, report: &CvReport) -> Result<()> {
    let mut out = String::from("fold,fpr,tpr\n");
    for (i, curve) in report.roc_curves.iter().enumerate() {
        for p in curve {
            out.push_str(&format!("{},{},{}\n", i, fmt_float(p.fpr), fmt_float(p.tpr)));
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn csv_error(path: &FsPath, e: csv::Error) -> Error {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::format(path, line, format!("{other:?}")),
    }
}
