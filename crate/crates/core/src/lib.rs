//! Exact computational algebra for polynomial automorphisms over small
//! finite fields.
//!
//! The crate is organized around four layers:
//!
//! - [`gf`]: arithmetic in `F_{p^m}` with a canonical 0..q-1 element
//!   indexing,
//! - [`mpoly`]: sparse multivariate polynomials over such a field,
//!   including formal substitution and a text grammar,
//! - [`autmap`]: polynomial endomorphisms and the classical automorphism
//!   constructions (elementary, linear, triangular, tame words, Nagata),
//! - [`permgrp`]: the permutations those maps induce on the point set
//!   `F_q^n`, their parity, and exact group orders via stabilizer chains.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod autmap;
pub mod gf;
pub mod mpoly;
pub mod permgrp;

pub use autmap::{
    random_fixing_tame_word, random_tame_word, slice_map, verify_inverse_pair, Automorphism,
    PolyMap, TameLetter, TameWord,
};
pub use gf::{FFElem, FieldSpec};
pub use mpoly::Poly;
pub use permgrp::{Bsgs, Parity, Perm, PointIndexer};

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has {got} coefficients, expected {expected} for degree {degree}")]
    ModulusLength { got: usize, expected: usize, degree: u32 },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is not reduced mod {1}")]
    ModulusCoefficient(u32, u32),
    #[error("modulus is reducible: divisible by {0}")]
    ModulusReducible(String),
    #[error("no built-in modulus for GF({p}^{m}); supply one explicitly")]
    NoDefaultModulus { p: u32, m: u32 },
    #[error("field with {q} elements exceeds the supported size ({max})")]
    FieldTooLarge { q: u64, max: u64 },
    #[error("element index {index} out of range for a field with {q} elements")]
    ElementRange { index: u32, q: u32 },
    #[error("division by zero in the field")]
    ZeroInverse,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("expected {expected} variables/coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial involves the target variable X{0}")]
    TargetVariableUsed(usize),
    #[error("coordinate {coord} may only use variables above X{coord}, found X{found}")]
    TriangularViolation { coord: usize, found: usize },
    #[error("diagonal coefficient {0} is zero")]
    ZeroDiagonal(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("not a permutation of 1..n")]
    NotAPermutation,
    #[error("map does not fix variable X{0} formally")]
    VariableNotFixed(usize),
    #[error("pair fails formal inverse verification")]
    NotAnInversePair,
    #[error("tame word must have at least one letter")]
    EmptyWord,
    #[error("induced point map is not bijective: points {a} and {b} both map to {image}")]
    NotBijective { a: usize, b: usize, image: usize },
    #[error("permutations act on different point counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("generator list is empty")]
    EmptyGenerators,
}

pub type Result<T> = std::result::Result<T, Error>;
