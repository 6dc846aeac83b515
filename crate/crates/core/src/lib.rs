//! Feasible regions for consecutive patterns of pattern-avoiding permutations.
//!
//! The library is organised around five layers:
//!
//! * [`perm`]: permutations, patterns, avoidance classes, enumeration and
//!   consecutive-occurrence statistics;
//! * [`overlap`]: directed multigraphs of overlapping patterns, walks, walk
//!   realization and walk decomposition;
//! * [`colouring`]: layer colourings, inherited colourings and the coloured
//!   overlap graph used for monotone-avoiding classes;
//! * [`geometry`]: exact rational linear algebra, simple-cycle enumeration,
//!   cycle polytopes, projections and exact LP;
//! * [`analysis`]: dimension computations, rank certificates and the
//!   dimension probe for general single-pattern classes.
//!
//! Everything numeric in the decision procedures is exact: rationals with
//! arbitrary-precision integers, no floating point anywhere.

pub mod analysis;
pub mod colouring;
pub mod error;
pub mod golden;
pub mod overlap;
pub mod perm;
pub mod geometry;

pub use error::{Error, Result};
pub use perm::{PatternSet, Permutation};
pub use colouring::ColouredPermutation;
