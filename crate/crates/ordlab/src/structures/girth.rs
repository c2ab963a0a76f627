use super::Hypergraph;
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Girth search outcome: the exact minimum cycle length when below the cap,
/// otherwise the certificate that no shorter cycle exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Exact(usize),
    AtLeast(usize),
}

impl Girth {
    pub fn at_least(&self, g: usize) -> bool {
        match *self {
            Girth::Exact(l) => l >= g,
            Girth::AtLeast(cap) => cap >= g,
        }
    }
}

/// Minimum cycle length, where a cycle of length L is an alternating sequence
/// x_1, e_1, x_2, ..., e_L, x_{L+1} = x_1 with consecutive vertices distinct,
/// consecutive hyperedges distinct, x_i and x_{i+1} both in e_i, and L >= 2.
/// Search is a BFS over (vertex, incoming hyperedge) states, cut off at `cap`:
/// any cycle of length >= cap is reported as `AtLeast(cap)`.
pub fn hypergraph_girth(g: &Hypergraph, cap: usize) -> Result<Girth> {
    if cap < 2 {
        return Err(Error::InvalidArgument(format!("cap {cap} < 2")));
    }
    let mut best: Option<usize> = None;
    for start in 0..g.n() {
        if let Some(l) = shortest_cycle_through(g, start, best.unwrap_or(cap)) {
            best = Some(best.map_or(l, |b| b.min(l)));
            if best == Some(2) {
                break;
            }
        }
    }
    Ok(match best {
        Some(l) => Girth::Exact(l),
        None => Girth::AtLeast(cap),
    })
}

/// Shortest closed walk at `start` of length >= 2 and < bound, or None.
/// States are (vertex, last hyperedge); the walk may revisit vertices and
/// hyperedges as long as consecutive ones differ.
fn shortest_cycle_through(g: &Hypergraph, start: usize, bound: usize) -> Option<usize> {
    let m = g.edge_count();
    let mut dist = vec![usize::MAX; g.n() * m];
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &ei in g.incident(start) {
        for &w in &g.edges()[ei] {
            if w != start && dist[w * m + ei] == usize::MAX {
                dist[w * m + ei] = 1;
                queue.push_back((w, ei));
            }
        }
    }
    let mut best: Option<usize> = None;
    while let Some((v, last)) = queue.pop_front() {
        let d = dist[v * m + last];
        if d + 1 >= bound || best.is_some_and(|b| d + 1 >= b) {
            continue;
        }
        for &ei in g.incident(v) {
            if ei == last {
                continue;
            }
            for &w in &g.edges()[ei] {
                if w == v {
                    continue;
                }
                if w == start {
                    best = Some(best.map_or(d + 1, |b| b.min(d + 1)));
                    continue;
                }
                if dist[w * m + ei] == usize::MAX {
                    dist[w * m + ei] = d + 1;
                    queue.push_back((w, ei));
                }
            }
        }
    }
    best
}

/// Marks every hyperedge lying on some cycle of length < g. Hyperedge e is on
/// such a cycle iff for some ordered pair x != y in e there is a walk y -> x
/// of length <= g-2 whose first and last hyperedges differ from e.
pub fn edges_on_short_cycles(g: &Hypergraph, girth_target: usize) -> Vec<bool> {
    let m = g.edge_count();
    let mut marked = vec![false; m];
    if girth_target < 3 {
        return marked;
    }
    let max_len = girth_target - 2;
    for (ei, e) in g.edges().iter().enumerate() {
        'pairs: for &x in e {
            for &y in e {
                if x == y {
                    continue;
                }
                if walk_exists_avoiding(g, y, x, ei, max_len) {
                    marked[ei] = true;
                    break 'pairs;
                }
            }
        }
    }
    marked
}

/// BFS over (vertex, last hyperedge) from `from`: is there a walk to `to` of
/// length in [1, max_len] that neither starts nor ends with hyperedge `avoid`?
fn walk_exists_avoiding(
    g: &Hypergraph,
    from: usize,
    to: usize,
    avoid: usize,
    max_len: usize,
) -> bool {
    let m = g.edge_count();
    let mut dist = vec![usize::MAX; g.n() * m];
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &ei in g.incident(from) {
        if ei == avoid {
            continue;
        }
        for &w in &g.edges()[ei] {
            if w == from {
                continue;
            }
            if w == to {
                return true;
            }
            if dist[w * m + ei] == usize::MAX {
                dist[w * m + ei] = 1;
                queue.push_back((w, ei));
            }
        }
    }
    while let Some((v, last)) = queue.pop_front() {
        let d = dist[v * m + last];
        if d >= max_len {
            continue;
        }
        for &ei in g.incident(v) {
            if ei == last {
                continue;
            }
            for &w in &g.edges()[ei] {
                if w == v {
                    continue;
                }
                if w == to && ei != avoid {
                    return true;
                }
                if w != to && dist[w * m + ei] == usize::MAX {
                    dist[w * m + ei] = d + 1;
                    queue.push_back((w, ei));
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_pair_gives_girth_two() {
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(hypergraph_girth(&g, 10).unwrap(), Girth::Exact(2));
    }

    #[test]
    fn triangle_girth_three() {
        let g = Hypergraph::complete(3, 2).unwrap();
        assert_eq!(hypergraph_girth(&g, 10).unwrap(), Girth::Exact(3));
    }

    #[test]
    fn forest_has_no_cycles() {
        let g = Hypergraph::path(6).unwrap();
        for cap in [2, 5, 20] {
            assert_eq!(hypergraph_girth(&g, cap).unwrap(), Girth::AtLeast(cap));
        }
    }

    #[test]
    fn cap_hides_long_cycles() {
        let g = Hypergraph::cycle(6).unwrap();
        assert_eq!(hypergraph_girth(&g, 4).unwrap(), Girth::AtLeast(4));
        assert_eq!(hypergraph_girth(&g, 7).unwrap(), Girth::Exact(6));
        assert!(hypergraph_girth(&g, 7).unwrap().at_least(6));
        assert!(!hypergraph_girth(&g, 7).unwrap().at_least(7));
    }

    #[test]
    fn loose_hyperedge_cycle() {
        // Three 3-edges pairwise sharing one vertex: x1,e1,x2,e2,x3,e3,x1.
        let g = Hypergraph::new(
            6,
            3,
            vec![vec![0, 1, 3], vec![1, 2, 4], vec![0, 2, 5]],
        )
        .unwrap();
        assert_eq!(hypergraph_girth(&g, 10).unwrap(), Girth::Exact(3));
    }

    #[test]
    fn girth_three_iff_no_doubly_shared_pair() {
        use rand::Rng;
        let mut rng = crate::rng::stream(5, "girth-char");
        for _ in 0..60 {
            let n = rng.gen_range(4..8);
            let mut edges = Vec::new();
            for _ in 0..rng.gen_range(1..6) {
                let mut e: Vec<usize> = Vec::new();
                while e.len() < 3 {
                    let v = rng.gen_range(0..n);
                    if !e.contains(&v) {
                        e.push(v);
                    }
                }
                e.sort_unstable();
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            let g = Hypergraph::new(n, 3, edges.clone()).unwrap();
            let mut shares_pair = false;
            for i in 0..edges.len() {
                for j in 0..i {
                    let common = edges[i].iter().filter(|v| edges[j].contains(v)).count();
                    if common >= 2 {
                        shares_pair = true;
                    }
                }
            }
            assert_eq!(hypergraph_girth(&g, 3).unwrap().at_least(3), !shares_pair);
        }
    }

    #[test]
    fn short_cycle_marking_matches_deletion_semantics() {
        // Triangle plus a pendant edge: the pendant is on no cycle.
        let g = Hypergraph::new(4, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![2, 3]])
            .unwrap();
        let marked = edges_on_short_cycles(&g, 4);
        assert_eq!(marked, vec![true, true, true, false]);
        // Girth target 3 only catches 2-cycles, absent in graphs.
        assert_eq!(edges_on_short_cycles(&g, 3), vec![false; 4]);
    }

    #[test]
    fn marking_covers_shared_pairs() {
        let g = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]])
            .unwrap();
        let marked = edges_on_short_cycles(&g, 3);
        assert_eq!(marked, vec![true, true, true]);
    }
}
