//! Classification of monic centered complex polynomial vector fields
//! `dz/dt = P(z)`: separatrix graphs, bracketings, analytic invariants,
//! numerical realization and bifurcation analysis.

pub mod cli;
pub mod combinat;
pub mod flow;
pub mod invariants;
pub mod poly;
pub mod quad;
pub mod realize;
pub mod stability;
mod roots;
pub mod text;

pub use combinat::{CombinatError, CombinatorialDataSet};
pub use flow::{separatrix_graph, trace_separatrix, SeparatrixGraphNumeric, SeparatrixTrace, TraceOptions};
pub use poly::{EquilibriumKind, EquilibriumPoint, PolyError, PolynomialVF, Root};
