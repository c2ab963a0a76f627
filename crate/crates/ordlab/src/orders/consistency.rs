use super::dist::OrderDistribution;
use super::perm::all_perms;
use crate::error::{Error, Result};
use crate::structures::{iso_class_reps, Structure, StructureKind};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// How a family exposes its law: an exact rational distribution, or a sampler
/// drawing N orders with a given seed.
pub enum FamilyLaw {
    Exact(Box<dyn Fn(&Structure) -> Result<OrderDistribution> + Sync>),
    Sampler(Box<dyn Fn(&Structure, u64, usize) -> Result<OrderDistribution> + Sync>),
}

/// A candidate consistent random ordering: an assignment G -> mu_G.
pub struct OrderingFamily {
    pub name: String,
    pub size_bound: usize,
    pub law: FamilyLaw,
}

impl OrderingFamily {
    /// The uniform family: every structure gets the uniform measure.
    pub fn uniform(size_bound: usize) -> Self {
        OrderingFamily {
            name: "uniform".into(),
            size_bound,
            law: FamilyLaw::Exact(Box::new(|s| OrderDistribution::uniform(s.size().max(1)))),
        }
    }

    /// Deliberately inconsistent family for negative tests: orders vertices by
    /// ascending degree, uniformly among the degree-sorted orders. Isomorphism
    /// invariant, but restriction to an edgeless pair inside a path is not
    /// uniform, so property (ii) fails.
    pub fn degree_sorted(size_bound: usize) -> Self {
        OrderingFamily {
            name: "degree-sorted".into(),
            size_bound,
            law: FamilyLaw::Exact(Box::new(|s| {
                let g = match s {
                    Structure::Hypergraph(g) => g,
                    _ => {
                        return Err(Error::FamilyDomain {
                            family: "degree-sorted".into(),
                            reason: "defined on hypergraphs only".into(),
                        })
                    }
                };
                let sorted: Vec<Vec<usize>> = all_perms(g.n())
                    .into_iter()
                    .filter(|p| p.windows(2).all(|w| g.degree(w[0]) <= g.degree(w[1])))
                    .collect();
                let w = crate::Rational::new(1.into(), (sorted.len() as u64).into());
                OrderDistribution::from_exact_weights(
                    g.n(),
                    sorted.into_iter().map(|p| (p, w.clone())).collect(),
                )
            })),
        }
    }

    fn evaluate(&self, s: &Structure, mode: &CheckMode) -> Result<OrderDistribution> {
        match (&self.law, mode) {
            (FamilyLaw::Exact(f), _) => f(s),
            (FamilyLaw::Sampler(f), CheckMode::Statistical { samples, seed }) => {
                let sub_seed = crate::rng::derive_seed(*seed, &format!("consistency/{}", s.label()));
                f(s, sub_seed, *samples)
            }
            (FamilyLaw::Sampler(_), CheckMode::Exact) => Err(Error::InvalidArgument(
                "exact consistency check requires an exact family law".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckMode {
    Exact,
    Statistical { samples: usize, seed: u64 },
}

/// One failed comparison, with enough context to reproduce it.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Violation {
    /// "isomorphism" (property i) or "restriction" (property ii).
    pub property: &'static str,
    pub structure: String,
    pub detail: String,
    pub tv: f64,
    pub threshold: f64,
}

#[derive(Debug, serde::Serialize)]
pub struct ConsistencyReport {
    pub family: String,
    pub mode: String,
    pub n_max: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the two defining properties of a consistent random ordering over
/// every labeled structure of the kind up to n_max:
/// (i) invariance under isomorphism, checked through one representative per
///     isomorphism class (any isomorphism factors through the representative,
///     so this covers all pairs);
/// (ii) the restriction of mu_G to every substructure universe equals the
///     family's law on the abstract substructure.
/// Exact mode demands rational equality; statistical mode compares empirical
/// laws against the two-sample TV threshold and caps structures at 5 points.
pub fn check_consistency(
    family: &OrderingFamily,
    kind: StructureKind,
    n_max: usize,
    mode: CheckMode,
) -> Result<ConsistencyReport> {
    let statistical_cap = 5;
    let sizes: Vec<usize> = match mode {
        CheckMode::Exact => (1..=n_max).collect(),
        CheckMode::Statistical { .. } => (1..=n_max.min(statistical_cap)).collect(),
    };
    let mut by_size: Vec<Vec<Structure>> = Vec::new();
    for &n in &sizes {
        by_size.push(kind.enumerate_labeled(n)?);
    }

    let all: Vec<&Structure> = by_size.iter().flatten().collect();
    let cache: BTreeMap<&Structure, OrderDistribution> = all
        .par_iter()
        .map(|s| Ok((*s, family.evaluate(s, &mode)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    if matches!(mode, CheckMode::Exact) {
        if let Some((s, _)) = cache.iter().find(|(_, d)| !d.is_exact()) {
            return Err(Error::FamilyDomain {
                family: family.name.clone(),
                reason: format!("exact mode got an empirical law on {}", s.label()),
            });
        }
    }
    let lookup = |s: &Structure| -> Result<&OrderDistribution> {
        cache.get(s).ok_or_else(|| Error::FamilyDomain {
            family: family.name.clone(),
            reason: format!("law not defined on substructure {}", s.label()),
        })
    };
    let compare = |n_universe: usize, a: &OrderDistribution, b: &OrderDistribution| -> Result<Option<(f64, f64)>> {
        match mode {
            CheckMode::Exact => {
                if a == b {
                    Ok(None)
                } else {
                    Ok(Some((a.tv_distance_f64(b)?, 0.0)))
                }
            }
            CheckMode::Statistical { samples, .. } => {
                let tv = a.tv_distance_f64(b)?;
                let thr = crate::stats::tv_threshold(n_universe, samples);
                Ok(if tv > thr { Some((tv, thr)) } else { None })
            }
        }
    };

    let mut checks = 0usize;
    let mut violations: Vec<Violation> = Vec::new();

    // Property (i): within each size, push the representative's law through
    // every isomorphism onto every class member.
    for group in &by_size {
        let reps = iso_class_reps(group, |a, b| {
            Structure::is_isomorphic(a, b).unwrap_or(false)
        });
        let rep_of: Vec<usize> = group
            .iter()
            .map(|g| {
                *reps
                    .iter()
                    .find(|&&r| Structure::is_isomorphic(&group[r], g).unwrap_or(false))
                    .expect("every structure has a representative")
            })
            .collect();
        let results: Vec<(usize, Vec<Violation>)> = group
            .par_iter()
            .enumerate()
            .map(|(gi, g)| -> Result<(usize, Vec<Violation>)> {
                let rep = &group[rep_of[gi]];
                let mu_rep = lookup(rep)?;
                let mu_g = lookup(g)?;
                let mut local = Vec::new();
                let mut local_checks = 0;
                for phi in Structure::isomorphisms(rep, g)? {
                    let pushed = mu_rep.pushforward(&phi)?;
                    local_checks += 1;
                    if let Some((tv, thr)) = compare(g.size(), &pushed, mu_g)? {
                        local.push(Violation {
                            property: "isomorphism",
                            structure: g.label(),
                            detail: format!(
                                "pushforward of {} along {:?} disagrees",
                                rep.label(),
                                phi
                            ),
                            tv,
                            threshold: thr,
                        });
                    }
                }
                Ok((local_checks, local))
            })
            .collect::<Result<Vec<_>>>()?;
        for (c, v) in results {
            checks += c;
            violations.extend(v);
        }
    }

    // Property (ii): every substructure universe of every structure.
    for group in &by_size {
        let results: Vec<(usize, Vec<Violation>)> = group
            .par_iter()
            .map(|g| -> Result<(usize, Vec<Violation>)> {
                let mu_g = lookup(g)?;
                let mut local = Vec::new();
                let mut local_checks = 0;
                for s in g.substructure_subsets()? {
                    let (sub, to_pos) = g.canonical_sub(&s)?;
                    let mu_sub = lookup(&sub)?.pushforward(&to_pos)?;
                    let marginal = mu_g.restriction_marginal(&s)?;
                    local_checks += 1;
                    if let Some((tv, thr)) = compare(s.len(), &marginal, &mu_sub)? {
                        local.push(Violation {
                            property: "restriction",
                            structure: g.label(),
                            detail: format!(
                                "marginal on {s:?} disagrees with the law of {}",
                                sub.label()
                            ),
                            tv,
                            threshold: thr,
                        });
                    }
                }
                Ok((local_checks, local))
            })
            .collect::<Result<Vec<_>>>()?;
        for (c, v) in results {
            checks += c;
            violations.extend(v);
        }
    }

    Ok(ConsistencyReport {
        family: family.name.clone(),
        mode: match mode {
            CheckMode::Exact => "exact".into(),
            CheckMode::Statistical { samples, seed } => {
                format!("statistical(samples={samples},seed={seed})")
            }
        },
        n_max,
        checks,
        violations,
    })
}
