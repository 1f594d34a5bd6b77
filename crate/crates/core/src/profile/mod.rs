//! ℓ-mer profile codes for the shotgun DNA storage channel.

pub mod channel;
pub mod codebook;
pub mod count;
pub mod debruijn;
pub mod varshamov;

pub use channel::{channel_simulate, decode_profile, decoding_trials, ChannelReadout, Decoded, DecodingTally, ErrorCounts};
pub use codebook::{build_profile_codebook, embed_profile, sweep_beta, BetaSweep, CodebookParams, ProfileCodebook};
pub use count::count_distinct_profiles;
pub use debruijn::{build_debruijn, equivalence_classes, is_valid_profile, profile_to_string, AllowedKmerSet, DeBruijnGraph};
pub use varshamov::{is_prime, varshamov_enumerate, VarshamovCode};
