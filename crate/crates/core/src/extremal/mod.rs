//! Exhaustive extremal search, symmetrization, the stability harnesses and
//! copy counting.

mod copies;
mod scenario;
mod search;
mod symmetrize;

pub use copies::*;
pub use scenario::*;
pub use search::*;
pub use symmetrize::*;
