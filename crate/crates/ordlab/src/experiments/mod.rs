//! Exact counting experiments and their Monte-Carlo counterparts: embedding
//! counts under an order, expected-copy capacity, order-deviation profiles,
//! concentration sweeps, order-push proportions under automorphisms, the
//! order-extension ratio, and a generic event estimator.

mod capacity;
mod counts;
mod deviation;
mod extension;
mod mc;
mod qop;
mod sweep;

pub use capacity::capacity;
pub use counts::{count_ordered_embeddings, embed_counts, pulled_back_order, EmbedCounts};
pub use deviation::{
    deviation_profile, tv_bound_from_delta, tv_bound_from_delta_f64, DeviationProfile, OrdSource,
    MAX_EXACT_UNIVERSE,
};
pub use extension::{extension_lemma_ratio, ExtensionRatios, MAX_EXTENSION_UNIVERSE};
pub use mc::{mc_estimate, MCEstimate, MIN_MC_SAMPLES};
pub use qop::{qop_proportion, QopMode};
pub use sweep::{
    concentration_sweep, medians_within_noise, sweep_csv, tight_path_pattern, SweepCell,
    SweepReport,
};
