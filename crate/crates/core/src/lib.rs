//! Pattern avoidance in the affine symmetric group.
//!
//! - [`affine`]: affine permutations by base window, with length, inversion
//!   tables, shifts and the named element families.
//! - [`pattern`] and [`containment`]: finite patterns and the exact decision
//!   of containment via difference constraints ([`constraints`]).
//! - [`enumerate`]: length-graded generation and exact avoider counts.
//! - [`sequences`]: exact evaluation of the closed forms the counts are
//!   checked against.
//! - [`verify`]: the comparison reports driven by the CLI.

pub mod affine;
pub mod constraints;
pub mod containment;
pub mod enumerate;
pub mod pattern;
pub mod sequences;
pub mod verify;

pub use affine::{AffineError, AffinePermutation, InversionTable, ReducedWord};
pub use containment::{avoids, contains, naive_contains, OccurrenceWitness};
pub use pattern::{Finiteness, MaximaSplit, Pattern, PatternError};
pub use enumerate::{
    count_avoiders, count_avoiders_with, graded_avoider_counts, CountOptions, EnumerationBudget,
    EnumerationError, GradedCountTable, Mode, Total,
};
