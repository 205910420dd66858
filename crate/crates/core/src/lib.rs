//! Linear and centered colorings, treedepth decompositions, and the
//! constructive algorithms relating them: optimal vertex ranking of trees,
//! the interval-graph recoloring, extremal families, and the CNF reduction
//! showing that recognizing linear colorings is hard.

pub mod budget;
pub mod colorings;
pub mod error;
pub mod generators;
pub mod graph;
pub mod interval;
pub mod io;
pub mod ranking;
pub mod sat;
pub mod treedepth;

pub use budget::Budget;
pub use colorings::{Coloring, Verdict, Witness};
pub use error::{Error, Result};
pub use graph::{Graph, Path, VertexSet};
pub use interval::IntervalRepresentation;
pub use ranking::{RankList, Ranking};
pub use sat::CnfFormula;
pub use treedepth::TreedepthDecomposition;
