//! Path-signature features and outcome statistics for dyadic interaction
//! recordings.
//!
//! The crate turns a session between a patient and a clinician, recorded
//! as diarized speech segments and 2-D head-position tracks, into a fixed
//! vector of named features, then relates those features to
//! neuropsychological test scores:
//!
//! 1. **Paths.** Speech becomes a 3-D staircase that accumulates silence,
//!    clinician, and patient time; head tracks become a 3-D patient path
//!    and a 4-D joint path ([`interaction`]).
//! 2. **Signatures.** Each path is summarized by its truncated
//!    log-signature in the Lyndon basis, a compact reparametrization-
//!    invariant description ([`signature`], [`transforms`]).
//! 3. **Statistics.** Feature columns are rank-correlated with scores
//!    under a subject bootstrap ([`stats`]), and a cross-validated linear
//!    max-margin classifier predicts score bands ([`classifier`]).
//! 4. **Cohorts.** A seeded generator produces synthetic cohorts with a
//!    controllable link between behavior and scores, used to validate the
//!    whole chain ([`synth`]).
//!
//! The `examples/` directory walks through each capability; the
//! `dyadsig` binary wires the same calls into `synth`, `features`,
//! `correlate`, and `classify` subcommands ([`pipeline`]).
//!
//! Everything is deterministic: one seed fixes every random draw, and
//! output files are byte-identical across reruns.

pub mod classifier;
pub mod error;
pub mod features;
pub mod interaction;
pub mod io;
pub mod pipeline;
mod rng;
pub mod signature;
pub mod stats;
pub mod synth;
pub mod transforms;

pub use error::{Error, Result};
