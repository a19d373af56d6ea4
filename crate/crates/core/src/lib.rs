//! Exact invariants of normal surface singularities from combinatorial data:
//! resolution graphs, Seifert data of star-shaped graphs and cyclic quotients
//! of Brieskorn-Pham hypersurfaces.
//!
//! All arithmetic is over arbitrary-precision integers and rationals.

pub mod cohomology;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod quotient;
pub mod report;
pub mod seifert;
pub mod selftest;

pub use error::{Error, Result};
pub use graph::{Cycle, QCycle, ResolutionGraph, Vertex};
