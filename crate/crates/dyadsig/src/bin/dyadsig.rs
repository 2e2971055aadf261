//! Command-line front end: generate cohorts, extract features, and run
//! the correlation and classification analyses.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dyadsig::classifier::Scale;
use dyadsig::io as dio;
use dyadsig::pipeline::{
    run_classify, run_correlate, run_features, ConfigOverrides, FeatureSet, RunConfig,
};
use dyadsig::synth::{generate_cohort, CohortSpec};

#[derive(Parser)]
#[command(
    name = "dyadsig",
    version,
    about = "Signature features and score statistics for patient-clinician sessions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic cohort directory.
    Synth(SynthArgs),
    /// Extract the feature matrix from a cohort directory.
    Features(FeaturesArgs),
    /// Bootstrap feature-score rank correlations for one scale.
    Correlate(CorrelateArgs),
    /// Cross-validate the score-band classifier for one scale.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Number of subjects.
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..))]
    n: u64,
    /// Master seed for all draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ability effect size; 0 removes the behavior-score link.
    #[arg(long, default_value_t = 1.0, value_parser = non_negative)]
    effect: f64,
    /// Session length in seconds.
    #[arg(long, default_value_t = 2400.0)]
    session_s: f64,
    /// Video frame rate.
    #[arg(long, default_value_t = 15.0)]
    fps: f64,
    /// Video frames per subject.
    #[arg(long, default_value_t = 10_000)]
    n_frames: u64,
    /// Score noise relative to ability's unit variance.
    #[arg(long, default_value_t = 0.5)]
    score_noise_sd: f64,
    /// Output cohort directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CommonConfig {
    /// TOML file with setting overrides; flags win over the file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed for resampling, folds, and training sweeps.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct FeaturesArgs {
    /// Directory of <subject_id>.jsonl segment files.
    #[arg(long)]
    segments: PathBuf,
    /// Directory of <subject_id>.csv track files.
    #[arg(long)]
    tracks: PathBuf,
    /// Output directory for features.csv.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: CommonConfig,
    /// Speech analysis window in seconds.
    #[arg(long)]
    speech_window_s: Option<f64>,
    /// Leading video frames to keep.
    #[arg(long)]
    movement_max_frames: Option<u64>,
    /// Video frame rate for the time axis.
    #[arg(long)]
    fps: Option<f64>,
    /// Turn-path log-signature depth.
    #[arg(long)]
    speech_depth: Option<usize>,
    /// Movement log-signature depth.
    #[arg(long)]
    movement_depth: Option<usize>,
    /// Drop turn-path coordinates that duplicate speaking totals.
    #[arg(long)]
    drop_level1: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Wisc,
    Tea,
    Nepsy,
    Celf,
}

impl From<ScaleArg> for Scale {
    fn from(s: ScaleArg) -> Scale {
        match s {
            ScaleArg::Wisc => Scale::Wisc,
            ScaleArg::Tea => Scale::Tea,
            ScaleArg::Nepsy => Scale::Nepsy,
            ScaleArg::Celf => Scale::Celf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FeatureSetArg {
    Interaction,
    Demographics,
}

impl From<FeatureSetArg> for FeatureSet {
    fn from(s: FeatureSetArg) -> FeatureSet {
        match s {
            FeatureSetArg::Interaction => FeatureSet::Interaction,
            FeatureSetArg::Demographics => FeatureSet::Demographics,
        }
    }
}

#[derive(Args)]
struct CorrelateArgs {
    /// Feature matrix written by the features command.
    #[arg(long)]
    matrix: PathBuf,
    /// Score table csv.
    #[arg(long)]
    scores: PathBuf,
    /// Test scale to correlate against.
    #[arg(long, value_enum, ignore_case = true)]
    scale: ScaleArg,
    /// Output directory for the report.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: CommonConfig,
    /// Bootstrap replicas.
    #[arg(long)]
    n_boot: Option<usize>,
    /// Confidence level in (0, 1).
    #[arg(long)]
    ci: Option<f64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Feature matrix written by the features command.
    #[arg(long)]
    matrix: PathBuf,
    /// Score table csv.
    #[arg(long)]
    scores: PathBuf,
    /// Test scale whose band is predicted.
    #[arg(long, value_enum, ignore_case = true)]
    scale: ScaleArg,
    /// Columns to classify with.
    #[arg(long = "features", value_enum, default_value = "interaction")]
    feature_set: FeatureSetArg,
    /// Output directory for the reports.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: CommonConfig,
    /// Cross-validation folds.
    #[arg(long)]
    k: Option<usize>,
    /// Hinge penalty weight.
    #[arg(long)]
    c_reg: Option<f64>,
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} is negative or not finite"))
    }
}

/// Layers defaults, the optional config file, and explicit flags.
fn build_config(common: &CommonConfig, flags: ConfigOverrides) -> dyadsig::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        cfg = cfg.with_overrides(&ConfigOverrides::from_file(path)?);
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg.with_overrides(&flags))
}

fn run(cli: Cli) -> dyadsig::Result<()> {
    match cli.command {
        Command::Synth(args) => {
            let cohort = generate_cohort(&CohortSpec {
                n_subjects: args.n as usize,
                seed: args.seed,
                effect_size: args.effect,
                session_s: args.session_s,
                fps: args.fps,
                n_frames: args.n_frames,
                score_noise_sd: args.score_noise_sd,
            })?;
            dio::write_cohort(&args.out, &cohort)?;
            println!(
                "wrote {} subjects to {}",
                cohort.subjects.len(),
                args.out.display()
            );
        }
        Command::Features(args) => {
            let cfg = build_config(
                &args.common,
                ConfigOverrides {
                    speech_window_s: args.speech_window_s,
                    movement_max_frames: args.movement_max_frames,
                    fps: args.fps,
                    speech_depth: args.speech_depth,
                    movement_depth: args.movement_depth,
                    drop_level1: args.drop_level1.then_some(true),
                    ..ConfigOverrides::default()
                },
            )?;
            let outcome = run_features(&args.segments, &args.tracks, &args.out, &cfg)?;
            for (id, reason) in &outcome.skipped {
                eprintln!("skipping {id}: {reason}");
            }
            println!(
                "wrote {} with {} subjects ({} skipped)",
                outcome.matrix_path.display(),
                outcome.n_subjects,
                outcome.skipped.len()
            );
        }
        Command::Correlate(args) => {
            let cfg = build_config(
                &args.common,
                ConfigOverrides {
                    n_boot: args.n_boot,
                    ci_level: args.ci,
                    ..ConfigOverrides::default()
                },
            )?;
            let outcome = run_correlate(
                &args.matrix,
                &args.scores,
                args.scale.into(),
                &args.out,
                &cfg,
            )?;
            let significant = outcome.summaries.iter().filter(|s| s.significant).count();
            println!(
                "wrote {} ({} subjects, {} of {} features significant)",
                outcome.report_path.display(),
                outcome.n_subjects,
                significant,
                outcome.summaries.len()
            );
        }
        Command::Classify(args) => {
            let cfg = build_config(
                &args.common,
                ConfigOverrides {
                    k_folds: args.k,
                    c_reg: args.c_reg,
                    ..ConfigOverrides::default()
                },
            )?;
            let outcome = run_classify(
                &args.matrix,
                &args.scores,
                args.scale.into(),
                args.feature_set.into(),
                &args.out,
                &cfg,
            )?;
            println!(
                "wrote {} and {} (auc {:.3} +/- {:.3})",
                outcome.auc_path.display(),
                outcome.roc_path.display(),
                outcome.report.auc_mean,
                outcome.report.auc_std
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
