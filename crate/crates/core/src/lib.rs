pub mod coloring;
pub mod corpus;
pub mod drawing;
pub mod fixtures;
pub mod graph;
pub mod immersion;
pub mod planarity;
pub mod random;
pub mod solver;

pub use coloring::{ColorOutcome, Coloring, ColoringError, Obstruction};
pub use drawing::{Crossing, Drawing, DrawingError, Planarization, Validity};
pub use graph::{Graph, GraphError, VertexSet};
pub use immersion::{ImmersionCertificate, ImmersionError, ImmersionFlags};
pub use solver::{Decision, Mode, SolverConfig, SolverError, SolverResult};
