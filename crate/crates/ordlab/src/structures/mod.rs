//! Finite combinatorial structures and their exact machinery: uniform
//! hypergraphs (graphs are the r=2 case), equivalence-class structures,
//! vector spaces over prime fields, and finite metric spaces, together with
//! induced substructures, embedding enumeration, girth, cycle-space tests,
//! exhaustive structure enumeration, and the text file formats.

mod embeddings;
mod enumerate;
mod equiv;
mod girth;
mod gsmall;
mod hypergraph;
pub mod io;
mod metric;
mod union;
mod vector_space;

pub use embeddings::{
    backtrack_injections, equiv_embeddings, hypergraph_embeddings, vector_space_embeddings,
    Embedding,
};
pub use enumerate::{
    all_equiv_structures, all_hypergraphs, all_r_subsets, all_subsets, all_vector_spaces,
    iso_class_reps,
};
pub use equiv::EquivStructure;
pub use girth::{edges_on_short_cycles, hypergraph_girth, Girth};
pub use gsmall::is_g_small;
pub use hypergraph::Hypergraph;
pub use metric::{MetricSpace, METRIC_TOL};
pub use union::{Structure, StructureKind};
pub use vector_space::VectorSpace;
