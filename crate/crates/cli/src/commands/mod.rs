pub mod discrepancy;
pub mod profile;
pub mod trace;
pub mod unique;

/// A command either completes or reports a violated check (exit code 1).
pub enum Outcome {
    Done,
    Violation(String),
}
