//! MOY graphs: factorizations, cohomology, dimensions, states and the
//! local cobordism maps.

pub mod dimension;
pub mod graph;
pub mod maps;
pub mod states;

pub use dimension::{moy_dimension, MoyEvaluator};
pub use graph::{arc_row, build_cp, circle_row, wide_rows, PlanarGraph, Vertex};
pub use states::{admissible_states, is_admissible, GraphState};

use crate::algebra::Potential;
use crate::error::Result;
use crate::mf::{CohomOptions, KoszulCohomology};

/// H_p(Γ) with representatives, certified by the MOY dimension when the
/// rewrite engine can evaluate the graph.
pub fn graph_cohomology(graph: &PlanarGraph, p: &Potential, opts: &CohomOptions) -> Result<KoszulCohomology> {
    let mf = build_cp(graph, p)?;
    let mut opts = opts.clone();
    if opts.certificate.is_none() && graph.is_closed() {
        opts.certificate = moy_dimension(graph, p.n()).ok();
    }
    KoszulCohomology::compute(&mf, &opts)
}
