use super::girth_gen::{large_girth_hypergraph, GirthParams};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, stream};
use crate::structures::{hypergraph_embeddings, Embedding, Hypergraph};
use rand::seq::SliceRandom;
use std::collections::BTreeSet;

/// Union-of-planted-copies construction: a k-uniform scaffold of girth >= g
/// hosts one uniformly placed copy of the pattern graph per hyperedge. The
/// restricted embeddings are exactly those landing inside a single hyperedge.
#[derive(Debug, Clone)]
pub struct ForbOutput {
    pub graph: Hypergraph,
    pub pattern: Hypergraph,
    pub hyperedges: Vec<Vec<usize>>,
    /// placements[i][v] = host vertex of pattern vertex v on hyperedge i.
    pub placements: Vec<Embedding>,
    pub restricted: Vec<Embedding>,
}

impl ForbOutput {
    /// Placement of hyperedge i as a permutation of slot ranks: entry v is
    /// the rank of the host of pattern vertex v within the sorted hyperedge.
    pub fn placement_pattern(&self, i: usize) -> Vec<usize> {
        let e = &self.hyperedges[i];
        self.placements[i]
            .iter()
            .map(|host| e.binary_search(host).expect("host outside hyperedge"))
            .collect()
    }
}

/// Canonical representative of the right coset pattern . Aut: the lexicographic
/// minimum of pattern composed with each automorphism. Placements yield the
/// same restricted embedding set iff their keys agree.
pub fn coset_key(pattern: &[usize], auts: &[Embedding]) -> Vec<usize> {
    auts.iter()
        .map(|alpha| alpha.iter().map(|&v| pattern[v]).collect::<Vec<usize>>())
        .min()
        .expect("automorphism list is never empty")
}

/// Builds the union graph of one random copy of `pattern` per hyperedge of a
/// k-uniform girth >= g scaffold, k = |pattern|. Returns the graph plus the
/// restricted embedding list of size |Aut(pattern)| * (hyperedge count).
pub fn forb_construction(
    pattern: &Hypergraph,
    n: usize,
    g: usize,
    a: f64,
    seed: u64,
) -> Result<ForbOutput> {
    if !pattern.is_graph() {
        return Err(Error::InvalidArgument(
            "pattern must be a graph (r = 2)".into(),
        ));
    }
    let k = pattern.n();
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "pattern has {k} vertices, need at least 3"
        )));
    }
    let params = GirthParams { n, r: k, g, a };
    let scaffold = large_girth_hypergraph(params, derive_seed(seed, "gen/forb/scaffold"))?;
    let mut rng = stream(seed, "gen/forb/plant");

    let mut placements: Vec<Embedding> = Vec::with_capacity(scaffold.edge_count());
    let mut union_edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut planted_total = 0usize;
    for e in scaffold.edges() {
        let mut hosts = e.clone();
        hosts.shuffle(&mut rng);
        for pe in pattern.edges() {
            let mut image = vec![hosts[pe[0]], hosts[pe[1]]];
            image.sort_unstable();
            union_edges.insert(image);
            planted_total += 1;
        }
        placements.push(hosts);
    }
    // Girth >= 3 forbids two hyperedges sharing a vertex pair, so planted
    // edges never collide across hyperedges.
    assert_eq!(union_edges.len(), planted_total, "planted edges collided");
    let graph = Hypergraph::new(n, 2, union_edges)?;

    let auts = hypergraph_embeddings(pattern, pattern)?;
    let mut restricted: Vec<Embedding> = Vec::with_capacity(auts.len() * placements.len());
    for hosts in &placements {
        for alpha in &auts {
            restricted.push(alpha.iter().map(|&v| hosts[v]).collect());
        }
    }
    Ok(ForbOutput {
        graph,
        pattern: pattern.clone(),
        hyperedges: scaffold.edges().to_vec(),
        placements,
        restricted,
    })
}

/// True when no member of `forbidden` embeds into `g` as an induced subgraph.
pub fn is_f_free(g: &Hypergraph, forbidden: &[Hypergraph]) -> Result<bool> {
    for f in forbidden {
        if !hypergraph_embeddings(f, g)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
