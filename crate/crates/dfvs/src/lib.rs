//! An exact fixed-parameter solver for directed feedback vertex set (dfvs)
//! and directed feedback arc set (dfas, via reduction).
//!
//! The pipeline: minimum vertex separators by unit-capacity flow, nested
//! separator layers, tight separator sequences, a four-outcome "crux"
//! subroutine, iterative compression with skew separators, and a recursive
//! driver whose running time is linear in the input size for fixed k.

pub mod compress;
pub mod crux;
pub mod digraph;
pub mod family;
pub mod flow;
pub mod gen;
pub mod io;
pub mod layers;
pub mod oracle;
pub mod solver;
pub mod tight;
