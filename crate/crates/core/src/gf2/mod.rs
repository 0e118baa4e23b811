//! Linear algebra and dg-model machinery over GF(2).

mod bitvec;
mod complex;
mod dg;
mod groups;
mod matrix;
mod presentation;
mod theta;

pub use bitvec::BitVec;
pub use complex::{cone, is_chain_map, is_quasi_iso, ChainComplex, Cone, Homology};
pub use dg::DgModel;
pub use groups::{k0, omega, Quotient};
pub use matrix::{span_basis, Echelon, GF2Matrix};
pub use presentation::{GeneratorData, Presentation, Triangle};
pub use theta::{theta, triangle_of, Square, ThetaClass};
