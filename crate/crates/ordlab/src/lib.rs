//! Consistent random orderings of finite combinatorial structures.
//!
//! A random ordering of a class of structures assigns to every structure `G` a
//! probability measure on the linear orders of its universe. The family is
//! *consistent* when it is invariant under isomorphism and when restricting the
//! order of `G` to an induced substructure `H` reproduces the measure assigned
//! to `H`. This crate provides:
//!
//! * exact and empirical order distributions with total-variation tooling,
//! * consistency checkers (exact enumeration at small sizes, two-sample TV
//!   tests for samplers),
//! * Gaussian, bipartite, projection, and hypergraph samplers realizing
//!   nonuniform consistent orderings,
//! * generators for high-girth hypergraphs, forbidden-subgraph instances, and
//!   glued metric spaces,
//! * admissible-order machinery (parts-respecting, convex, vector-space
//!   natural orders) with extension counts,
//! * embedding-count experiments: capacity, deviation profiles, concentration
//!   sweeps, quasi-order-preservation proportions, extension-lemma ratios.
//!
//! The `ordlab` binary exposes the same functionality as subcommands; see the
//! `cli` module.

#![forbid(unsafe_code)]

pub mod admissibility;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod orders;
pub mod rng;
pub mod samplers;
pub mod scalar;
pub mod stats;
pub mod structures;

pub use error::{Error, Result};

/// Exact scalar used wherever a value must be held without rounding.
pub type Rational = num_rational::BigRational;

/// Metric space with floating-point distances.
pub type Metric = structures::MetricSpace<f64>;

/// Metric space with exact rational distances.
pub type MetricExact = structures::MetricSpace<Rational>;
