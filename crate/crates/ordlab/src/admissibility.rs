//! Admissible-order families: which linear orders a structure may carry,
//! order transitivity of the automorphism action, and extension counting
//! from a substructure's order to the ambient structure's orders.

use crate::error::{Error, Result};
use crate::orders::{all_perms, is_perm, pushforward_perm, restrict_perm, Perm};
use crate::structures::{all_r_subsets, Structure};
use crate::Rational;
use std::collections::BTreeSet;

/// Hard cap on ordered-basis enumeration for the lex family. The universe
/// bound alone admits spaces whose basis count is astronomically large.
const MAX_BASES: u128 = 1_000_000;

const MAX_UNIVERSE: usize = 8;

/// A rule selecting the admissible subset of linear orders per structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibleFamily {
    /// Every linear order is admissible.
    AllOrders,
    /// Orders placing the whole first part below the whole second part.
    /// Parts are given in the ambient structure's labels and must partition
    /// its universe with every edge crossing between them.
    BipartiteParts { a1: Vec<usize>, a2: Vec<usize> },
    /// Orders under which every equivalence class is an interval.
    ConvexEquiv,
    /// Lexicographic orders induced by an ordered basis, with a fixed field
    /// order putting 0 least (default: 0 < 1 < ... < q-1) and the first
    /// basis coordinate most significant. Distinct bases yielding the same
    /// order are counted once.
    VsNatural { field_order: Option<Vec<usize>> },
}

impl AdmissibleFamily {
    pub fn kind_name(&self) -> &'static str {
        match self {
            AdmissibleFamily::AllOrders => "all-orders",
            AdmissibleFamily::BipartiteParts { .. } => "bipartite-parts",
            AdmissibleFamily::ConvexEquiv => "convex-equiv",
            AdmissibleFamily::VsNatural { .. } => "vs-natural",
        }
    }

    /// Pulls the family back through an inclusion map so it applies to the
    /// substructure with universe {0..inc.len()-1}.
    pub(crate) fn restrict(&self, inc: &[usize]) -> AdmissibleFamily {
        match self {
            AdmissibleFamily::BipartiteParts { a1, a2 } => {
                let pick = |part: &[usize]| -> Vec<usize> {
                    (0..inc.len()).filter(|&i| part.contains(&inc[i])).collect()
                };
                AdmissibleFamily::BipartiteParts { a1: pick(a1), a2: pick(a2) }
            }
            other => other.clone(),
        }
    }
}

/// Registered family kind names, in the order the CLI advertises them.
pub fn family_kinds() -> &'static [&'static str] {
    &["all-orders", "bipartite-parts", "convex-equiv", "vs-natural"]
}

/// Builds the family named `kind` against a concrete structure. Bipartite
/// parts are derived from the unique 2-coloring of each component, the part
/// containing the component's least vertex going first.
pub fn family_for(kind: &str, a: &Structure) -> Result<AdmissibleFamily> {
    match kind {
        "all-orders" => Ok(AdmissibleFamily::AllOrders),
        "bipartite-parts" => {
            let g = match a {
                Structure::Hypergraph(g) if g.is_graph() => g,
                _ => {
                    return Err(Error::InvalidArgument(
                        "bipartite-parts requires a graph".into(),
                    ))
                }
            };
            let mut side = vec![usize::MAX; g.n()];
            for comp in g.components() {
                let root = *comp.iter().min().expect("components are non-empty");
                side[root] = 0;
                let mut queue = std::collections::VecDeque::from([root]);
                while let Some(u) = queue.pop_front() {
                    for w in g.neighbors(u) {
                        if side[w] == usize::MAX {
                            side[w] = 1 - side[u];
                            queue.push_back(w);
                        } else if side[w] == side[u] {
                            return Err(Error::InvalidStructure(
                                "graph is not bipartite".into(),
                            ));
                        }
                    }
                }
            }
            let a1 = (0..g.n()).filter(|&v| side[v] == 0).collect();
            let a2 = (0..g.n()).filter(|&v| side[v] == 1).collect();
            Ok(AdmissibleFamily::BipartiteParts { a1, a2 })
        }
        "convex-equiv" => match a {
            Structure::Equiv(_) => Ok(AdmissibleFamily::ConvexEquiv),
            _ => Err(Error::InvalidArgument(
                "convex-equiv requires an equivalence structure".into(),
            )),
        },
        "vs-natural" => match a {
            Structure::Vector(_) => Ok(AdmissibleFamily::VsNatural { field_order: None }),
            _ => Err(Error::InvalidArgument(
                "vs-natural requires a vector space".into(),
            )),
        },
        other => Err(Error::InvalidArgument(format!(
            "unknown admissible family kind {other:?}"
        ))),
    }
}

fn check_universe_cap(n: usize) -> Result<()> {
    if n > MAX_UNIVERSE {
        return Err(Error::SizeLimit { what: "universe for order enumeration", got: n, max: MAX_UNIVERSE });
    }
    Ok(())
}

/// The complete duplicate-free list of admissible orders of `a`, sorted
/// lexicographically as sequences.
pub fn admissible_orders(a: &Structure, f: &AdmissibleFamily) -> Result<Vec<Perm>> {
    match f {
        AdmissibleFamily::AllOrders => {
            check_universe_cap(a.size())?;
            Ok(all_perms(a.size()))
        }
        AdmissibleFamily::BipartiteParts { a1, a2 } => {
            let g = match a {
                Structure::Hypergraph(g) if g.is_graph() => g,
                _ => {
                    return Err(Error::InvalidArgument(
                        "bipartite-parts requires a graph".into(),
                    ))
                }
            };
            check_universe_cap(g.n())?;
            let mut side = vec![usize::MAX; g.n()];
            for &v in a1 {
                if v >= g.n() || side[v] != usize::MAX {
                    return Err(Error::InvalidArgument("parts do not partition the universe".into()));
                }
                side[v] = 0;
            }
            for &v in a2 {
                if v >= g.n() || side[v] != usize::MAX {
                    return Err(Error::InvalidArgument("parts do not partition the universe".into()));
                }
                side[v] = 1;
            }
            if side.iter().any(|&s| s == usize::MAX) {
                return Err(Error::InvalidArgument("parts do not partition the universe".into()));
            }
            if g.edges().iter().any(|e| side[e[0]] == side[e[1]]) {
                return Err(Error::InvalidArgument("an edge lies inside a part".into()));
            }
            let k = a1.len();
            Ok(all_perms(g.n())
                .into_iter()
                .filter(|p| p[..k].iter().all(|&v| side[v] == 0))
                .collect())
        }
        AdmissibleFamily::ConvexEquiv => {
            let e = match a {
                Structure::Equiv(e) => e,
                _ => {
                    return Err(Error::InvalidArgument(
                        "convex-equiv requires an equivalence structure".into(),
                    ))
                }
            };
            check_universe_cap(e.n())?;
            Ok(all_perms(e.n())
                .into_iter()
                .filter(|p| {
                    let mut closed = vec![false; e.n()];
                    let mut prev = usize::MAX;
                    for &x in p {
                        let c = e.class_of(x);
                        if c != prev {
                            if closed[c] {
                                return false;
                            }
                            if prev != usize::MAX {
                                closed[prev] = true;
                            }
                            prev = c;
                        }
                    }
                    true
                })
                .collect())
        }
        AdmissibleFamily::VsNatural { field_order } => {
            let v = match a {
                Structure::Vector(v) => v,
                _ => {
                    return Err(Error::InvalidArgument(
                        "vs-natural requires a vector space".into(),
                    ))
                }
            };
            if v.size() > 64 {
                return Err(Error::SizeLimit { what: "vector space universe", got: v.size(), max: 64 });
            }
            let fo: Vec<usize> = match field_order {
                None => (0..v.q()).collect(),
                Some(fo) => {
                    let mut seen = vec![false; v.q()];
                    if fo.len() != v.q()
                        || fo.first() != Some(&0)
                        || fo.iter().any(|&c| c >= v.q() || std::mem::replace(&mut seen[c], true))
                    {
                        return Err(Error::InvalidArgument(
                            "field order must be a permutation of the field with 0 first".into(),
                        ));
                    }
                    fo.clone()
                }
            };
            let mut count_bound: u128 = 1;
            let mut qi: u128 = 1;
            for _ in 0..v.d() {
                count_bound = count_bound.saturating_mul(v.size() as u128 - qi);
                qi *= v.q() as u128;
            }
            if count_bound > MAX_BASES {
                return Err(Error::SizeLimit {
                    what: "ordered basis enumeration",
                    got: count_bound.min(usize::MAX as u128) as usize,
                    max: MAX_BASES as usize,
                });
            }
            let mut orders: BTreeSet<Perm> = BTreeSet::new();
            let mut chosen: Vec<usize> = Vec::new();
            enumerate_bases(v, &fo, &mut chosen, &mut orders);
            Ok(orders.into_iter().collect())
        }
    }
}

/// Depth-first over ordered bases; each complete basis contributes the order
/// reading coefficient tuples in field-order lex, first coordinate heaviest.
fn enumerate_bases(
    v: &crate::structures::VectorSpace,
    fo: &[usize],
    chosen: &mut Vec<usize>,
    orders: &mut BTreeSet<Perm>,
) {
    if chosen.len() == v.d() {
        orders.insert(lex_order_of_basis(v, fo, chosen));
        return;
    }
    let mut in_span = vec![false; v.size()];
    for s in v.span(chosen) {
        in_span[s] = true;
    }
    for cand in 1..v.size() {
        if !in_span[cand] {
            chosen.push(cand);
            enumerate_bases(v, fo, chosen, orders);
            chosen.pop();
        }
    }
}

fn lex_order_of_basis(v: &crate::structures::VectorSpace, fo: &[usize], basis: &[usize]) -> Perm {
    let d = basis.len();
    let mut seq = Vec::with_capacity(v.size());
    let mut digits = vec![0usize; d];
    loop {
        let mut elem = 0;
        for i in 0..d {
            elem = v.add(elem, v.scale(fo[digits[i]], basis[i]));
        }
        seq.push(elem);
        // Odometer with the last digit fastest: first coordinate is most
        // significant in the induced order.
        let mut i = d;
        loop {
            if i == 0 {
                debug_assert_eq!(seq.len(), v.size());
                return seq;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < v.q() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// k(a): the number of admissible orders.
pub fn count_admissible(a: &Structure, f: &AdmissibleFamily) -> Result<usize> {
    Ok(admissible_orders(a, f)?.len())
}

/// Automorphisms of `a` that respect the family's parameters: for designated
/// bipartite parts, only maps preserving each part setwise; other families
/// add no constraint.
pub fn family_automorphisms(a: &Structure, f: &AdmissibleFamily) -> Result<Vec<Perm>> {
    let auts = a.automorphisms()?;
    match f {
        AdmissibleFamily::BipartiteParts { a1, .. } => Ok(auts
            .into_iter()
            .filter(|pi| a1.iter().all(|&v| a1.contains(&pi[v])))
            .collect()),
        _ => Ok(auts),
    }
}

/// True iff the family's automorphism group acts transitively on the
/// admissible orders. Since the admissible set is closed under the action,
/// transitivity is equivalent to one orbit covering the whole set.
pub fn is_order_transitive(a: &Structure, f: &AdmissibleFamily) -> Result<bool> {
    let orders = admissible_orders(a, f)?;
    let Some(first) = orders.first() else { return Ok(true) };
    let mut orbit: BTreeSet<Perm> = BTreeSet::new();
    for pi in family_automorphisms(a, f)? {
        orbit.insert(pushforward_perm(first, &pi)?);
    }
    Ok(orders.iter().all(|o| orbit.contains(o)))
}

/// Checks that `inc` includes `a` into `b` as an induced substructure: same
/// kind, injective, and relations agree in both directions.
pub(crate) fn validate_inclusion(a: &Structure, b: &Structure, inc: &[usize]) -> Result<()> {
    if inc.len() != a.size() {
        return Err(Error::InvalidArgument("inclusion map must cover the substructure universe".into()));
    }
    let mut seen = vec![false; b.size()];
    for &x in inc {
        if x >= b.size() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidArgument("inclusion map must be injective into the ambient universe".into()));
        }
    }
    let ok = match (a, b) {
        (Structure::Hypergraph(x), Structure::Hypergraph(y)) => {
            x.r() == y.r()
                && all_r_subsets(x.n(), x.r()).iter().all(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&v| inc[v]).collect();
                    img.sort_unstable();
                    x.has_edge(s) == y.has_edge(&img)
                })
        }
        (Structure::Equiv(x), Structure::Equiv(y)) => (0..x.n()).all(|u| {
            (u + 1..x.n()).all(|w| x.same_class(u, w) == y.same_class(inc[u], inc[w]))
        }),
        (Structure::Vector(x), Structure::Vector(y)) => {
            x.q() == y.q()
                && (0..x.size()).all(|u| {
                    (0..x.size()).all(|w| inc[x.add(u, w)] == y.add(inc[u], inc[w]))
                })
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument("map is not an induced substructure inclusion".into()))
    }
}

/// Number of admissible orders of `b` whose restriction along `inc` equals
/// the admissible order `sigma` of `a`.
pub fn extension_count(
    a: &Structure,
    sigma: &[usize],
    b: &Structure,
    inc: &[usize],
    f: &AdmissibleFamily,
) -> Result<usize> {
    validate_inclusion(a, b, inc)?;
    if !is_perm(sigma) || sigma.len() != a.size() {
        return Err(Error::InvalidArgument("sigma is not an order on the substructure".into()));
    }
    let f_a = f.restrict(inc);
    if !admissible_orders(a, &f_a)?.iter().any(|o| o == sigma) {
        return Err(Error::InvalidArgument("order is not admissible on the substructure".into()));
    }
    let mut s_sorted = inc.to_vec();
    s_sorted.sort_unstable();
    let phi: Vec<usize> = inc
        .iter()
        .map(|x| s_sorted.binary_search(x).expect("inc maps into s_sorted"))
        .collect();
    let sigma_in_b = pushforward_perm(sigma, &phi)?;
    let mut count = 0;
    for tau in admissible_orders(b, f)? {
        if restrict_perm(&tau, &s_sorted)? == sigma_in_b {
            count += 1;
        }
    }
    Ok(count)
}

/// extension_count normalized by the total admissible count of `b`.
pub fn extension_ratio(
    a: &Structure,
    sigma: &[usize],
    b: &Structure,
    inc: &[usize],
    f: &AdmissibleFamily,
) -> Result<Rational> {
    let count = extension_count(a, sigma, b, inc, f)?;
    let total = count_admissible(b, f)?;
    Ok(Rational::new(count.into(), total.into()))
}

/// True iff every admissible order of `a` has the same number of admissible
/// extensions to `b`.
pub fn equal_extension_probe(
    a: &Structure,
    b: &Structure,
    inc: &[usize],
    f: &AdmissibleFamily,
) -> Result<bool> {
    validate_inclusion(a, b, inc)?;
    let f_a = f.restrict(inc);
    let mut counts = Vec::new();
    for sigma in admissible_orders(a, &f_a)? {
        counts.push(extension_count(a, &sigma, b, inc, f)?);
    }
    Ok(counts.windows(2).all(|w| w[0] == w[1]))
}
