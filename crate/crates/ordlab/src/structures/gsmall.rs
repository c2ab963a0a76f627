use super::Hypergraph;
use crate::error::{Error, Result};

/// A graph is g-small when it is connected on at least 3 vertices, has no
/// articulation vertex, and its cycle space (dimension |E| - |V| + 1 over
/// GF(2)) is spanned by the simple cycles of length < g. The single-edge
/// graph is not g-small by convention; no other cutpoint-free acyclic graph
/// exists, so requiring n >= 3 settles every degenerate case.
pub fn is_g_small(k: &Hypergraph, g: usize) -> Result<bool> {
    if k.r() != 2 {
        return Err(Error::InvalidArgument(format!(
            "g-smallness is defined for graphs, got r = {}",
            k.r()
        )));
    }
    if k.edge_count() > 128 {
        return Err(Error::SizeLimit {
            what: "edge count for cycle-space rank",
            got: k.edge_count(),
            max: 128,
        });
    }
    if k.n() < 3 || !k.is_connected() {
        return Ok(false);
    }
    for v in 0..k.n() {
        let rest: Vec<usize> = (0..k.n()).filter(|&u| u != v).collect();
        let (sub, _) = k.induced(&rest)?;
        if !sub.is_connected() {
            return Ok(false);
        }
    }
    let target = k.edge_count() + 1 - k.n();
    let short = simple_cycles_shorter_than(k, g);
    Ok(gf2_rank(&short) == target)
}

/// Edge-index sets of all simple cycles with fewer than `g` edges, each cycle
/// listed once. Cycles are rooted at their minimum vertex and traversed with
/// the smaller neighbor first to kill the direction duplicate.
fn simple_cycles_shorter_than(k: &Hypergraph, g: usize) -> Vec<u128> {
    let mut out = Vec::new();
    if g <= 3 {
        return out;
    }
    let max_vertices = g - 1;
    let mut path = Vec::new();
    let mut on_path = vec![false; k.n()];
    for s in 0..k.n() {
        path.push(s);
        on_path[s] = true;
        extend_cycle(k, s, max_vertices, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    out
}

fn extend_cycle(
    k: &Hypergraph,
    root: usize,
    max_vertices: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<u128>,
) {
    let v = *path.last().unwrap();
    for u in k.neighbors(v) {
        if u == root && path.len() >= 3 && path[1] < v {
            out.push(edge_mask(k, path));
        }
        if u > root && !on_path[u] && path.len() < max_vertices {
            path.push(u);
            on_path[u] = true;
            extend_cycle(k, root, max_vertices, path, on_path, out);
            on_path[u] = false;
            path.pop();
        }
    }
}

fn edge_mask(k: &Hypergraph, cycle: &[usize]) -> u128 {
    let mut mask = 0u128;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        let key = vec![a.min(b), a.max(b)];
        let idx = k.edges().binary_search(&key).expect("cycle edge must exist");
        mask |= 1 << idx;
    }
    mask
}

fn gf2_rank(rows: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for &row in rows {
        let mut x = row;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_triangles_span_at_girth_four() {
        let k4 = Hypergraph::complete(4, 2).unwrap();
        assert!(is_g_small(&k4, 4).unwrap());
        // No cycles shorter than 3 exist, so g=3 fails.
        assert!(!is_g_small(&k4, 3).unwrap());
    }

    #[test]
    fn five_cycle_needs_its_own_length() {
        let c5 = Hypergraph::cycle(5).unwrap();
        assert!(!is_g_small(&c5, 5).unwrap());
        assert!(is_g_small(&c5, 6).unwrap());
    }

    #[test]
    fn single_edge_excluded() {
        let k2 = Hypergraph::complete(2, 2).unwrap();
        for g in [3, 4, 10] {
            assert!(!is_g_small(&k2, g).unwrap());
        }
    }

    #[test]
    fn cutpoint_disqualifies() {
        // Two triangles glued at vertex 2.
        let bowtie = Hypergraph::new(
            5,
            2,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![2, 3], vec![2, 4], vec![3, 4]],
        )
        .unwrap();
        assert!(!is_g_small(&bowtie, 4).unwrap());
    }

    #[test]
    fn disconnected_disqualifies() {
        let two_triangles = Hypergraph::new(
            6,
            2,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![3, 4], vec![3, 5], vec![4, 5]],
        )
        .unwrap();
        assert!(!is_g_small(&two_triangles, 4).unwrap());
    }

    #[test]
    fn rank_oracle_on_k4() {
        let k4 = Hypergraph::complete(4, 2).unwrap();
        let triangles = simple_cycles_shorter_than(&k4, 4);
        assert_eq!(triangles.len(), 4);
        assert_eq!(gf2_rank(&triangles), 3);
        let all = simple_cycles_shorter_than(&k4, 8);
        // 4 triangles + 3 four-cycles.
        assert_eq!(all.len(), 7);
        assert_eq!(gf2_rank(&all), 3);
    }

    #[test]
    fn cycle_enumeration_counts_each_once() {
        let c6 = Hypergraph::cycle(6).unwrap();
        assert_eq!(simple_cycles_shorter_than(&c6, 6).len(), 0);
        assert_eq!(simple_cycles_shorter_than(&c6, 7).len(), 1);
    }

    #[test]
    fn monotone_in_g_on_random_graphs() {
        use rand::Rng;
        let mut rng = crate::rng::stream(17, "gsmall-monotone");
        for _ in 0..40 {
            let n = rng.gen_range(3..7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..i {
                    if rng.gen_bool(0.6) {
                        edges.push(vec![j, i]);
                    }
                }
            }
            let k = Hypergraph::new(n, 2, edges).unwrap();
            let mut prev = false;
            for g in 3..=n + 2 {
                let cur = is_g_small(&k, g).unwrap();
                assert!(!prev || cur, "monotonicity broke at g={g}");
                prev = cur;
            }
        }
    }

    #[test]
    fn rejects_hypergraphs() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(is_g_small(&h, 4).is_err());
    }
}
