use crate::error::{Error, Result};
use crate::orders::{position_of, Perm};
use crate::structures::{Embedding, Structure};
use std::collections::BTreeMap;

/// Embedding counts of a pattern into a host under one fixed host order:
/// `n_ind` embeddings in total, broken down by the pattern order each one
/// pulls the host order back to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedCounts {
    pub n_ind: u64,
    pub n_ord: BTreeMap<Perm, u64>,
}

impl EmbedCounts {
    pub fn ordered(&self, ord_h: &[usize]) -> u64 {
        self.n_ord.get(ord_h).copied().unwrap_or(0)
    }
}

/// Order on the pattern universe induced by an embedding: pattern vertices
/// sorted by the host rank of their images.
pub fn pulled_back_order(phi: &Embedding, host_rank: &[usize]) -> Perm {
    let mut order: Perm = (0..phi.len()).collect();
    order.sort_by_key(|&v| host_rank[phi[v]]);
    order
}

/// Counts embeddings of `h` into `g` grouped by pulled-back order under
/// `ord_g`. When `restriction` is given, only those embeddings are counted.
pub fn embed_counts(
    h: &Structure,
    g: &Structure,
    ord_g: &[usize],
    restriction: Option<&[Embedding]>,
) -> Result<EmbedCounts> {
    if ord_g.len() != g.size() || !crate::orders::is_perm(ord_g) {
        return Err(Error::InvalidArgument(
            "host order is not a permutation of the host universe".into(),
        ));
    }
    let owned;
    let embeddings: &[Embedding] = match restriction {
        Some(list) => list,
        None => {
            owned = Structure::embeddings(h, g)?;
            &owned
        }
    };
    let rank = position_of(ord_g);
    let mut n_ord: BTreeMap<Perm, u64> = BTreeMap::new();
    for phi in embeddings {
        *n_ord.entry(pulled_back_order(phi, &rank)).or_insert(0) += 1;
    }
    Ok(EmbedCounts {
        n_ind: embeddings.len() as u64,
        n_ord,
    })
}

/// Nord(h, g) at a single (ord_h, ord_g) pair.
pub fn count_ordered_embeddings(
    h: &Structure,
    ord_h: &[usize],
    g: &Structure,
    ord_g: &[usize],
    restriction: Option<&[Embedding]>,
) -> Result<u64> {
    Ok(embed_counts(h, g, ord_g, restriction)?.ordered(ord_h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::all_perms;
    use crate::structures::{Hypergraph, StructureKind};

    fn graph(n: usize, edges: &[[usize; 2]]) -> Structure {
        Structure::Hypergraph(
            Hypergraph::new(n, 2, edges.iter().map(|e| e.to_vec())).unwrap(),
        )
    }

    #[test]
    fn k2_into_k2_matching_orders() {
        let k2 = graph(2, &[[0, 1]]);
        let counts = embed_counts(&k2, &k2, &[0, 1], None).unwrap();
        assert_eq!(counts.n_ind, 2);
        assert_eq!(counts.ordered(&[0, 1]), 1);
        assert_eq!(counts.ordered(&[1, 0]), 1);
    }

    #[test]
    fn identity_embedding_preserves_own_order() {
        let g = graph(4, &[[0, 1], [1, 2], [2, 3]]);
        for ord in [vec![0, 1, 2, 3], vec![3, 1, 0, 2]] {
            assert!(count_ordered_embeddings(&g, &ord, &g, &ord, None).unwrap() >= 1);
        }
    }

    #[test]
    fn ordered_counts_partition_embeddings() {
        // Every embedding pulls the host order back to exactly one pattern
        // order, exhaustively over all hosts on <= 4 vertices.
        let h = graph(3, &[[0, 1], [1, 2]]);
        for n in 3..=4 {
            for host in StructureKind::Graph.enumerate_labeled(n).unwrap() {
                for ord_g in all_perms(n) {
                    let counts = embed_counts(&h, &host, &ord_g, None).unwrap();
                    let total: u64 = counts.n_ord.values().sum();
                    assert_eq!(total, counts.n_ind);
                }
            }
        }
    }

    #[test]
    fn restriction_limits_the_count() {
        let h = graph(2, &[[0, 1]]);
        let g = graph(3, &[[0, 1], [1, 2]]);
        let all = embed_counts(&h, &g, &[0, 1, 2], None).unwrap();
        assert_eq!(all.n_ind, 4);
        let restricted = embed_counts(&h, &g, &[0, 1, 2], Some(&[vec![0, 1], vec![1, 0]]))
            .unwrap();
        assert_eq!(restricted.n_ind, 2);
        assert_eq!(restricted.ordered(&[0, 1]), 1);
        assert_eq!(restricted.ordered(&[1, 0]), 1);
    }

    #[test]
    fn pulled_back_order_follows_host_ranks() {
        // Hosts of pattern vertices 0,1,2 sit at ranks 2,0,1: sorted by rank
        // the pattern reads 1,2,0.
        let rank = position_of(&[1, 2, 0]);
        assert_eq!(pulled_back_order(&vec![0, 1, 2], &rank), vec![1, 2, 0]);
    }

    #[test]
    fn rejects_bad_host_order() {
        let k2 = graph(2, &[[0, 1]]);
        assert!(embed_counts(&k2, &k2, &[0, 0], None).is_err());
        assert!(embed_counts(&k2, &k2, &[0, 1, 2], None).is_err());
    }
}
