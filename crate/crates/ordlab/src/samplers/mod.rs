//! Non-uniform consistent-ordering samplers: Gaussian degree orderings for
//! graphs and hypergraphs, the bipartite part ordering, random-projection
//! orderings for negative-type metrics, and the deterministic numeric kit
//! (normal CDF/quantile, fixed quadrature) that oracles them.

pub mod batch;
pub mod bipartite;
pub mod gauss;
pub mod numeric;
pub mod projection;

pub use batch::sample_empirical;
pub use bipartite::{bipartition, sample_bipartite_ordering};
pub use gauss::{
    sample_exchangeable_block, sample_gaussian_ordering, sample_hypergraph_gaussian_ordering,
};
pub use numeric::{
    gauss_legendre_200, integrate, normal_cdf, normal_quantile, path3_epsilon,
    path3_order_probability, phi,
};
pub use projection::{
    bounded_degree_metric, embed_negative_type, is_cnsd, metric_rows, sample_projection_ordering,
};
