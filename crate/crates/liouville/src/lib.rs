//! Liouville digit streams, exact approximation certificates, and
//! finite-state dimension measurement.
//!
//! The library builds four families of binary (and general base-k) digit
//! streams whose values are Liouville numbers with prescribed normality
//! behaviour:
//!
//! * [`ConstructionKind::FactorialOnes`] — ones exactly at factorial
//!   positions; maximally compressible.
//! * [`ConstructionKind::SparseNumerals`] — the binary numeral of every
//!   integer embedded at factorial positions; every string occurs, yet the
//!   ones density vanishes.
//! * [`ConstructionKind::DeBruijnNormal`] — stage i repeats the canonical
//!   de Bruijn sequence B(k,i) exactly i^i times; normal to base k.
//! * [`ConstructionKind::DeBruijnDiluted`] — the same stages padded with
//!   zero blocks so the block-entropy rate converges to a chosen rational
//!   m/n.
//!
//! Every construction comes with an exact stage convergent (an unreduced
//! big-integer rational whose expansion reproduces the stream through the
//! end of the stage) and a decidable certificate for the Liouville
//! approximation inequality, checked with integer arithmetic only — no
//! floating point is involved anywhere in the certification path.
//!
//! [`dimension`] measures block frequencies and normalized entropy rates
//! over stream prefixes, and [`artin`] implements the primitive-root
//! machinery behind the conditional multi-base construction: simultaneous
//! primitive-root prime search, maximal-period expansion blocks of 1/p,
//! orbit equidistribution counts, and the staged sum built from
//! right-shifted blocks of (a_1⋯a_n)^{p-1}/p.
//!
//! The `liouville` binary exposes all of it as subcommands (`gen`,
//! `verify`, `fsdim`, `analyze`, `debruijn`, `artin`); the `examples/`
//! directory has one runnable program per capability.
//!
//! [`ConstructionKind::FactorialOnes`]: constructions::ConstructionKind::FactorialOnes
//! [`ConstructionKind::SparseNumerals`]: constructions::ConstructionKind::SparseNumerals
//! [`ConstructionKind::DeBruijnNormal`]: constructions::ConstructionKind::DeBruijnNormal
//! [`ConstructionKind::DeBruijnDiluted`]: constructions::ConstructionKind::DeBruijnDiluted

pub mod artin;
pub mod cli;
pub mod constructions;
pub mod debruijn;
pub mod dimension;
pub mod error;
pub mod exact;

pub use constructions::{ConstructionKind, ConstructionRecipe, DigitStream, StageSchedule};
pub use debruijn::DeBruijnSequence;
pub use error::{Error, Result};
pub use exact::{Convergent, ExactRational, StageReport};

/// Default cap on the number of symbols any single call may materialize.
pub const DEFAULT_SYMBOL_BUDGET: u64 = 1 << 28;
