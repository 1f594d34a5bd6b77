//! Deletion channel, bitwise majority alignment and marker codes.

pub mod bma;
pub mod channel;
pub mod experiment;
pub mod lift;
pub mod marker;

pub use bma::bma_reconstruct;
pub use channel::{generate_traces, is_subsequence, DeletionChannel, Trace};
pub use experiment::{run_cell, sweep, sweep_csv, CellResult, SweepCell, CSV_HEADER};
pub use lift::{gc_balanced_marker, lift, lift_to_dna, split_components, QuaternaryLift};
pub use marker::{decode_marker_code, encode_marker_code, DecodeReport, MarkerCode, MarkerCodeParams, RllBlock};
