//! Combinatorial maps on orientable surfaces and generalized Schnyder
//! structures: angle labelings, orientations of the primal-dual completion,
//! the mod-3/gamma characterization, distributive lattices of homologous
//! orientations, and the middle-walk construction on toroidal triangulations.
//!
//! The crate is `no_std` (with `alloc`); all values are immutable after
//! construction and all operations are pure functions, so everything can be
//! shared freely across threads.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod completion;
pub mod fixtures;
pub mod homology;
pub mod lattice;
pub mod map;
pub mod oracle;
pub mod toroidal;

pub use map::{Dart, Orientation, SurfaceMap, Walk};
