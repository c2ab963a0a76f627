use super::{EquivStructure, Hypergraph, VectorSpace};
use crate::error::{Error, Result};
use itertools::Itertools;

/// All r-element subsets of 0..n in lexicographic order.
pub fn all_r_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(r).collect()
}

/// Every labeled r-uniform hypergraph on n vertices, one per subset of the
/// (n choose r) possible hyperedges. Exhaustive-oracle fuel; capped so the
/// output stays enumerable.
pub fn all_hypergraphs(n: usize, r: usize) -> Result<Vec<Hypergraph>> {
    let slots = all_r_subsets(n, r);
    if slots.len() > 20 {
        return Err(Error::SizeLimit {
            what: "hyperedge slots for exhaustive enumeration",
            got: slots.len(),
            max: 20,
        });
    }
    let mut out = Vec::with_capacity(1 << slots.len());
    for mask in 0u32..(1 << slots.len()) {
        let edges: Vec<Vec<usize>> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        out.push(Hypergraph::new(n, r, edges)?);
    }
    Ok(out)
}

/// Every partition of 0..n, via restricted growth strings: class_of[0] = 0 and
/// class_of[i] <= 1 + max of the prefix. Bell(n) structures.
pub fn all_equiv_structures(n: usize) -> Result<Vec<EquivStructure>> {
    if n == 0 || n > 9 {
        return Err(Error::SizeLimit {
            what: "universe for partition enumeration",
            got: n,
            max: 9,
        });
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(cur: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<EquivStructure>) {
        if pos == cur.len() {
            out.push(EquivStructure::new(cur.clone()));
            return;
        }
        for c in 0..=max_used + 1 {
            cur[pos] = c;
            rec(cur, pos + 1, max_used.max(c), out);
        }
    }
    if n == 1 {
        out.push(EquivStructure::new(vec![0]));
    } else {
        rec(&mut cur, 1, 0, &mut out);
    }
    Ok(out)
}

/// Vector spaces over prime fields whose universe has at most max_size
/// elements, smallest first. Dimension 0 is excluded (empty-basis space is a
/// single point and carries no orders of interest).
pub fn all_vector_spaces(max_size: usize) -> Vec<VectorSpace> {
    let mut out = Vec::new();
    for q in [2usize, 3, 5, 7, 11, 13] {
        if q > max_size {
            break;
        }
        let mut d = 1;
        while q.pow(d as u32) <= max_size {
            out.push(VectorSpace::new(q, d).unwrap());
            d += 1;
        }
    }
    out.sort_by_key(|v| (v.size(), v.q()));
    out
}

/// All non-empty subsets of 0..n, each sorted ascending; ordered by size then
/// lexicographically. The consistency checker walks these.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for k in 1..=n {
        out.extend((0..n).combinations(k));
    }
    out
}

/// Indices of one representative per isomorphism class, smallest index first,
/// classes decided by the supplied pairwise test.
pub fn iso_class_reps<T>(items: &[T], iso: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    'outer: for i in 0..items.len() {
        for &r in &reps {
            if iso(&items[r], &items[i]) {
                continue 'outer;
            }
        }
        reps.push(i);
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::hypergraph_embeddings;

    #[test]
    fn labeled_graph_counts() {
        assert_eq!(all_hypergraphs(3, 2).unwrap().len(), 8);
        assert_eq!(all_hypergraphs(4, 2).unwrap().len(), 64);
        assert_eq!(all_hypergraphs(4, 3).unwrap().len(), 16);
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            assert_eq!(all_equiv_structures(n).unwrap().len(), bell);
        }
    }

    #[test]
    fn partitions_are_distinct() {
        let all = all_equiv_structures(4).unwrap();
        for i in 0..all.len() {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn vector_space_inventory() {
        let small = all_vector_spaces(5);
        let sizes: Vec<usize> = small.iter().map(|v| v.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5]);
        assert!(all_vector_spaces(64)
            .iter()
            .any(|v| v.q() == 2 && v.d() == 3));
    }

    #[test]
    fn subset_count() {
        assert_eq!(all_subsets(4).len(), 15);
        assert_eq!(all_subsets(1), vec![vec![0]]);
    }

    #[test]
    fn graph_iso_classes_on_three_vertices() {
        let graphs = all_hypergraphs(3, 2).unwrap();
        let reps = iso_class_reps(&graphs, |a, b| {
            a.edge_count() == b.edge_count()
                && !hypergraph_embeddings(a, b).unwrap().is_empty()
        });
        // Empty, single edge, path, triangle.
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn four_vertex_graph_iso_classes() {
        let graphs = all_hypergraphs(4, 2).unwrap();
        let reps = iso_class_reps(&graphs, |a, b| {
            a.edge_count() == b.edge_count()
                && !hypergraph_embeddings(a, b).unwrap().is_empty()
        });
        assert_eq!(reps.len(), 11);
    }
}
