//! Combinatorial knot theory on planar diagram (PD) codes.
//!
//! The crate computes Kauffman states and the Turaev genus of a diagram,
//! classical invariants (Goeritz determinant and Gordon–Litherland
//! signature, Kauffman bracket / Jones polynomial), Khovanov and Lee
//! homology with the Rasmussen s-invariant, diagram reductions to
//! positive/negative diagrams via spanning trees, lower bounds for the
//! Turaev genus from pairs of concordance invariants, and a bounded
//! search for quasi-alternating certificates.
//!
//! All arithmetic is exact (integers, rationals, GF(2)); there is no
//! floating point anywhere. With the default `parallel` feature the
//! embarrassingly parallel inner loops (state sums, resolution cubes,
//! corpus sweeps) run on rayon; without it everything falls back to
//! sequential iteration.

pub mod bounds;
pub mod classical;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod khovanov;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod qa;
pub mod turaev;

pub use diagram::{Diagram, PretzelSpec, Smoothing};
pub use error::{Error, Result};
