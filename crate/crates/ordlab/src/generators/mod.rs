//! Randomized structure generators: sparse random hypergraphs, the
//! short-cycle-deletion route to large girth, and the two planting
//! constructions (pattern copies per hyperedge, metric gluing) built on it.

mod forb;
mod girth_gen;
mod metric_gen;
mod random;

pub use forb::{coset_key, forb_construction, is_f_free, ForbOutput};
pub use girth_gen::{large_girth_hypergraph, make_connected, GirthParams};
pub use metric_gen::{
    distances_in_semigroup, metric_construction, metric_construction_with_a, spread, MetricOutput,
};
pub use random::random_hypergraph;
