//! Invariants of oriented virtual knots given as signed Gauss codes.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, census
//! processing and the command line live in the `vknot` crate.

#![no_std]

extern crate alloc;

pub mod diagram;
pub mod flat;
pub mod gauss;
pub mod generate;
pub mod invariant;
pub mod moves;
pub mod poly;

pub use diagram::{ChengColoring, Diagram, DiagramError, SmoothedDiagram};
pub use flat::{FlatCode, FlatStatus, FlatVerdict, TftReport, TftStatus};
pub use gauss::{GaussError, PassToken, RawCode, Role, Sign};
pub use invariant::{Evaluation, IndexTable, InvariantError};
pub use moves::{MoveSite, ScrambleConfig};
pub use poly::{LaurentPoly, LaurentPoly2};
