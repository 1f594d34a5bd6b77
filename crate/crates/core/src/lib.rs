//! Coding primitives for DNA-based storage channels.
//!
//! * [`strings`]: alphabets, substring spectra, ℓ-mer profiles and the
//!   asymmetric profile distance.
//! * [`profile`]: de Bruijn graphs, Varshamov profile codebooks, the
//!   substitution/coverage channel and its decoder.
//! * [`trace`]: the deletion channel, bitwise majority alignment and
//!   marker-based coded trace reconstruction, plus quaternary lifting.
//! * [`discrepancy`]: balanced bounded-intersection set families over prime
//!   fields and transversal designs.
//! * [`unique`]: reconstruction of strings from their L-substring sets.

pub mod discrepancy;
pub mod error;
pub mod profile;
pub mod rng;
pub mod strings;
pub mod trace;
pub mod unique;

pub use error::{Error, Result};
pub use strings::{
    asymmetric_distance, period, profile as profile_of, substring_spectrum, Alphabet, ProfileVector, QaryString,
    SubstringSpectrum,
};
