//! Hypergraph Turán workbench: triangle families of r-graphs, Lagrangians with
//! optimality certificates, the entropy identities behind them, and exhaustive
//! extremal search at small scale.

pub mod entropy;
pub mod error;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod hgfile;
pub mod lagrangian;
pub mod morph;
pub mod numeric;
mod parallel;
pub mod steiner;
pub mod verify;

pub use error::{Error, Result};
pub use families::{PatternKind, TrianglePattern};
pub use graph::{Edge, RGraph, Vertex};
pub use lagrangian::{maximize, MaximizeConfig, Mode, OptResult, SimplexVector};
