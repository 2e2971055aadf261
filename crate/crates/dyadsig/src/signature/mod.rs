//! Path signatures, log-signatures, and the Lyndon basis.

mod lyndon;
mod tensor;

pub use lyndon::{
    log_signature, log_signature_in, logsig_dim, logsig_level_dim, lyndon_words, LogSignature,
    LyndonBasis, LyndonWord,
};
pub use tensor::{path_signature, segment_signature, word_index, Path, TruncatedTensor};
