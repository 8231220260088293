//! Steiner triple systems, their weak 3-colourings, and defining sets of
//! those colourings.
//!
//! The crate is split along the lines of the problem:
//!
//! - [`designs`]: building and validating triple systems (explicit blocks,
//!   cyclic developments, the small built-in systems, the Bose and Skolem
//!   families) and testing isomorphism.
//! - [`coloring`]: weak colourings over the palette `{R, G, Y}`, colouring
//!   patterns, chromatic numbers and unique colourability.
//! - [`defining`]: extension counting, defining-set searches (minimum and
//!   largest minimal), forcing strength and the Bose/Skolem defining sets.
//! - [`catalog`]: the embedded listing of the eighty STS(15)s.
//! - [`golden`]: verification of transcribed reference rows.

pub mod catalog;
pub mod coloring;
pub mod defining;
pub mod designs;
mod error;
pub mod golden;

pub use catalog::Catalog;
pub use coloring::{Color, ColorPattern, Coloring, PartialColoring};
pub use defining::{DefiningSetRecord, SearchKind, SearchOptions, Strength};
pub use designs::TripleSystem;
pub use error::{BudgetReport, Error, Result};

/// A point of a triple system, always in `0..v`.
pub type Point = usize;
