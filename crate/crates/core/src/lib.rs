//! Executable calculus for planar cobordism diagrams with surgery models.
//!
//! The crate is `no_std` and only needs `alloc`. It is split into:
//!
//! - [`geometry`]: exact planar PL diagrams, crossing detection, 180° inversion
//!   and the shadow (area of the bounded part of the complement).
//! - [`objects`]: marked objects, intersection tables, 0-size surgery objects.
//! - [`category`]: morphism words and their realized diagrams (identity,
//!   composition, rotations, surgeries, unions, inversion).
//! - [`gf2`]: GF(2) linear algebra, chain complexes, cones, presentations,
//!   the evaluator [`gf2::theta`] and the K₀ / cobordism group quotients.
//! - [`cabling`]: cabling, cabling equivalence, braiding, axiom checks and the
//!   naturality / octahedral constructions.
//! - [`metrics`]: shadow fragmentation distances, weighted decomposition
//!   metrics, rigidity and non-contraction scans.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cabling;
pub mod category;
pub mod demo;
mod error;
pub mod geometry;
pub mod gf2;
pub mod metrics;
pub mod objects;

pub use error::{Error, Result};
pub use geometry::Rat;
