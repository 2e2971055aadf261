//! The full pipeline through the library API: synthesize a cohort,
//! extract interaction features, correlate them with one score scale,
//! and cross-validate a classifier against a demographics baseline.
//! Mirrors what the `dyadsig` binary does with `synth`, `features`,
//! `correlate`, and `classify`.
//!
//!     cargo run --example end_to_end

use dyadsig::classifier::Scale;
use dyadsig::io;
use dyadsig::pipeline::{run_classify, run_correlate, run_features, FeatureSet, RunConfig};
use dyadsig::synth::{generate_cohort, CohortSpec};

fn main() -> dyadsig::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let root = dir.path();

    // Short sessions keep the demo fast; real recordings would use the
    // RunConfig defaults (40 min of speech, 10k frames).
    let cohort = generate_cohort(&CohortSpec {
        n_subjects: 40,
        seed: 5,
        effect_size: 2.0,
        session_s: 150.0,
        n_frames: 300,
        ..CohortSpec::default()
    })?;
    io::write_cohort(root, &cohort)?;
    println!("cohort: {} subjects under {}", cohort.subjects.len(), root.display());

    let cfg = RunConfig {
        speech_window_s: 150.0,
        movement_max_frames: 300,
        n_boot: 500,
        k_folds: 4,
        ..RunConfig::default()
    };

    let features = run_features(&root.join("segments"), &root.join("tracks"), root, &cfg)?;
    println!(
        "features: {} subjects, {} skipped -> {}",
        features.n_subjects,
        features.skipped.len(),
        features.matrix_path.display()
    );

    let correlate = run_correlate(
        &features.matrix_path,
        &root.join("scores.csv"),
        Scale::Wisc,
        root,
        &cfg,
    )?;
    println!("\nstrongest WISC correlations of {} bootstrapped:", correlate.summaries.len());
    for s in correlate.summaries.iter().take(3) {
        println!(
            "  {:<24} rho {:>6.3}  ci [{:>6.3}, {:>6.3}]  significant: {}",
            s.feature_name, s.point_rho, s.ci_low, s.ci_high, s.significant
        );
    }

    for feature_set in [FeatureSet::Interaction, FeatureSet::Demographics] {
        let classify = run_classify(
            &features.matrix_path,
            &root.join("scores.csv"),
            Scale::Wisc,
            feature_set,
            root,
            &cfg,
        )?;
        println!(
            "\nclassify WISC / {feature_set}: auc {:.3} +- {:.3} over {} folds",
            classify.report.auc_mean,
            classify.report.auc_std,
            classify.report.per_fold_auc.len()
        );
        println!("  reports: {}", classify.auc_path.display());
    }
    Ok(())
}
