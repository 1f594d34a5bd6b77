//! Balanced set families with bounded intersections: the Babai-Frankl
//! polynomial construction over a prime field, ±1 labelings and their
//! discrepancy, and transversal designs.

pub mod design;
pub mod family;
pub mod field;

pub use design::{augment_td, verify_transversal_design, TdViolation, TransversalDesign};
pub use family::{
    babai_frankl_family, balanced_labeling, discrepancy, min_discrepancy_bruteforce, point_index, verify_t_bounded,
    Discrepancy, FamilyFile, Labeling, SetFamily,
};
pub use field::PrimeField;
