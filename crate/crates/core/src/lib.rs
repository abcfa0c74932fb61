//! Reeb graphs of real-valued functions, presented combinatorially and as
//! constructible cosheaves over the line, with ε-smoothing, the canonical
//! maps into smoothings, and verification and search of interleavings.

pub mod cli;
pub mod cosheaf;
pub mod csp;
pub mod dynconn;
pub mod fixtures;
pub mod graph;
pub mod interleave;
pub mod io;
pub mod morphism;
pub mod rational;
pub mod smoothing;

pub use graph::{Cell, EdgeId, GraphBuilder, RGraph, VertexId};
pub use morphism::RGraphMorphism;
pub use rational::Rational;
