use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// r-uniform hypergraph on vertices 0..n-1. Graphs are the r=2 case.
///
/// Edges are stored sorted (within each edge and across the edge list), so two
/// equal hypergraphs have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, r: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidStructure(format!("uniformity r={r}, need r >= 2")));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let mut e = e;
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidStructure(format!(
                    "hyperedge {e:?} has {} vertices, expected {r}",
                    e.len()
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidStructure(format!("hyperedge {e:?} repeats a vertex")));
            }
            if *e.last().unwrap() >= n {
                return Err(Error::InvalidStructure(format!("hyperedge {e:?} out of range 0..{n}")));
            }
            if !set.insert(e.clone()) {
                return Err(Error::InvalidStructure(format!("duplicate hyperedge {e:?}")));
            }
        }
        let edges: Vec<Vec<usize>> = set.into_iter().collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Ok(Self { n, r, edges, incidence })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_graph(&self) -> bool {
        self.r == 2
    }

    /// Edge indices incident to v.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Membership test for a sorted candidate edge.
    pub fn has_edge(&self, e: &[usize]) -> bool {
        self.edges.binary_search_by(|x| x.as_slice().cmp(e)).is_ok()
    }

    /// Adjacency test for graphs (r=2).
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let e = if u < v { [u, v] } else { [v, u] };
        self.has_edge(&e)
    }

    /// Neighbor list for graphs (r=2), ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incidence[v]
            .iter()
            .map(|&i| {
                let e = &self.edges[i];
                if e[0] == v {
                    e[1]
                } else {
                    e[0]
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Induced substructure on S: hyperedges entirely inside S survive, others
    /// are discarded. Vertices are relabeled 0..|S|-1 in ascending S order;
    /// the returned map sends new labels to the original ones.
    pub fn induced(&self, s: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() {
            return Err(Error::InvalidArgument("subset repeats a vertex".into()));
        }
        if sorted.last().is_some_and(|&v| v >= self.n) {
            return Err(Error::InvalidArgument(format!("subset exceeds 0..{}", self.n)));
        }
        let mut new_label = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            new_label[v] = i;
        }
        let kept = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| new_label[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| new_label[v]).collect());
        let sub = Hypergraph::new(sorted.len(), self.r, kept)?;
        Ok((sub, sorted))
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    /// Vertices in no hyperedge are singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &ei in &self.incidence[v] {
                    for &w in &self.edges[ei] {
                        if !seen[w] {
                            seen[w] = true;
                            comp.push(w);
                            queue.push(w);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn complete(n: usize, r: usize) -> Result<Self> {
        use itertools::Itertools;
        Hypergraph::new(n, r, (0..n).combinations(r))
    }

    /// Path graph 0-1-...-(n-1).
    pub fn path(n: usize) -> Result<Self> {
        Hypergraph::new(n, 2, (1..n).map(|i| vec![i - 1, i]))
    }

    pub fn empty(n: usize, r: usize) -> Self {
        Hypergraph::new(n, r, std::iter::empty()).expect("empty edge set is valid")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Hypergraph::new(n, 2, (0..n).map(|i| vec![i, (i + 1) % n]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(3, 2, vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1, 2]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Hypergraph::new(3, 1, vec![vec![0]]).is_err());
    }

    #[test]
    fn induced_discards_partial_hyperedges() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let (sub, map) = g.induced(&[0, 1]).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(map, vec![0, 1]);
    }

    #[test]
    fn induced_keeps_inner_edges_and_relabels() {
        let k3 = Hypergraph::complete(3, 2).unwrap();
        let (sub, _) = k3.induced(&[0, 1]).unwrap();
        assert_eq!(sub.edges(), &[vec![0, 1]]);
        let (all, _) = k3.induced(&[0, 1, 2]).unwrap();
        assert_eq!(all, k3);
    }

    #[test]
    fn induced_composes() {
        let g = Hypergraph::path(5).unwrap();
        let (s1, m1) = g.induced(&[0, 2, 3, 4]).unwrap();
        let (s2, m2) = s1.induced(&[1, 2, 3]).unwrap();
        let composed: Vec<usize> = m2.iter().map(|&i| m1[i]).collect();
        let (direct, m3) = g.induced(&composed).unwrap();
        assert_eq!(s2, direct);
        assert_eq!(composed, m3);
    }

    #[test]
    fn degrees_and_components() {
        let g = Hypergraph::new(5, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert!(!g.is_connected());
        assert_eq!(g.neighbors(1), vec![0, 2]);
    }
}
