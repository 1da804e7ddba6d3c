//! Functigraphs `C(G, f)` and their metric dimension.
//!
//! - [`graph`]: graphs, generators, hop distances, text format.
//! - [`functigraph`]: vertex functions and the `C(G, f)` builder.
//! - [`resolver`]: metric codes, resolving sets, twins, exact solver.
//! - [`formulas`]: closed-form dimensions and bounds.
//! - [`constructions`]: explicit resolving sets for the known families.
//! - [`harness`]: theorem sweeps, isomorphism dedup, reports.

pub mod constructions;
pub mod error;
pub mod functigraph;
pub mod formulas;
pub mod graph;
pub mod harness;
pub mod resolver;

pub use error::{Error, Result};
pub use functigraph::{build_functigraph, Functigraph, VertexFunction};
pub use graph::{DistanceMatrix, Graph};
