//! Experiment harness behind the `oddaut` binary.
//!
//! Five experiments over point spaces of at most 4096 points: parity of a
//! single map, formal inverse verification, the order of the group the
//! tame alphabet generates, a seeded search for an odd automorphism with a
//! verified inverse, and the slice-parity product law.  Every run emits
//! JSONL [`report::ReportRecord`]s.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{ExperimentConfig, FieldConfig, SearchFamily};
pub use experiments::{
    factorial, point_space_size, run_parity, run_search, run_slice_check, run_theorem_check,
    run_verify_inverse, tame_generator_alphabet, ParityOutcome, SearchOutcome, SearchParams,
    SliceOutcome, TheoremOutcome, VerifyOutcome, MAX_POINTS,
};
pub use report::{ReportRecord, Reporter};
