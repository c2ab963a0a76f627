use super::{EquivStructure, Hypergraph, VectorSpace};
use crate::error::{Error, Result};
use itertools::Itertools;

/// Injection from pattern vertices to host vertices; index = pattern vertex.
pub type Embedding = Vec<usize>;

/// Enumerates injections of 0..h_size into 0..g_size, extending one pattern
/// vertex at a time. `consistent(map, u, cand)` decides whether pattern vertex
/// u (= map.len()) may go to host vertex cand given the partial map. Output is
/// lexicographic.
pub fn backtrack_injections(
    h_size: usize,
    g_size: usize,
    consistent: &dyn Fn(&[usize], usize, usize) -> bool,
) -> Vec<Embedding> {
    let mut out = Vec::new();
    let mut map: Vec<usize> = Vec::with_capacity(h_size);
    let mut used = vec![false; g_size];
    fn go(
        h_size: usize,
        g_size: usize,
        consistent: &dyn Fn(&[usize], usize, usize) -> bool,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Embedding>,
    ) {
        if map.len() == h_size {
            out.push(map.clone());
            return;
        }
        let u = map.len();
        for cand in 0..g_size {
            if used[cand] || !consistent(map, u, cand) {
                continue;
            }
            map.push(cand);
            used[cand] = true;
            go(h_size, g_size, consistent, map, used, out);
            map.pop();
            used[cand] = false;
        }
    }
    go(h_size, g_size, consistent, &mut map, &mut used, &mut out);
    out
}

/// Sorted neighbor degrees, descending; used for graph pruning.
fn neighbor_degrees(g: &Hypergraph, v: usize) -> Vec<usize> {
    let mut d: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Induced embeddings of H into G (same uniformity). Every r-subset of the
/// image must be an edge exactly when its preimage is.
pub fn hypergraph_embeddings(h: &Hypergraph, g: &Hypergraph) -> Result<Vec<Embedding>> {
    if h.r() != g.r() {
        return Err(Error::InvalidArgument(format!(
            "uniformity mismatch: {} vs {}",
            h.r(),
            g.r()
        )));
    }
    let r = h.r();
    let graph_prune: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = (r == 2).then(|| {
        (
            (0..h.n()).map(|v| neighbor_degrees(h, v)).collect(),
            (0..g.n()).map(|v| neighbor_degrees(g, v)).collect(),
        )
    });
    let consistent = move |map: &[usize], u: usize, cand: usize| {
        if g.degree(cand) < h.degree(u) {
            return false;
        }
        if let Some((hnd, gnd)) = &graph_prune {
            // Each pattern neighbor needs a distinct host neighbor of at least
            // its degree; descending dominance is the cheap necessary check.
            let (hd, gd) = (&hnd[u], &gnd[cand]);
            if hd.len() > gd.len() || hd.iter().zip(gd).any(|(a, b)| a > b) {
                return false;
            }
        }
        if u + 1 < r {
            return true;
        }
        for rest in (0..u).combinations(r - 1) {
            let mut h_edge: Vec<usize> = rest.clone();
            h_edge.push(u);
            h_edge.sort_unstable();
            let mut g_edge: Vec<usize> = rest.iter().map(|&i| map[i]).collect();
            g_edge.push(cand);
            g_edge.sort_unstable();
            if h.has_edge(&h_edge) != g.has_edge(&g_edge) {
                return false;
            }
        }
        true
    };
    Ok(backtrack_injections(h.n(), g.n(), &consistent))
}

/// Induced embeddings of equivalence structures: the class relation is
/// preserved and reflected.
pub fn equiv_embeddings(h: &EquivStructure, g: &EquivStructure) -> Vec<Embedding> {
    let consistent = |map: &[usize], u: usize, cand: usize| {
        map.iter()
            .enumerate()
            .all(|(v, &img)| h.same_class(u, v) == g.same_class(cand, img))
    };
    backtrack_injections(h.n(), g.n(), &consistent)
}

/// Linear embeddings of V into W over the same field: injective linear maps,
/// enumerated by images of the standard basis. Each result is the full map on
/// V's universe.
pub fn vector_space_embeddings(v: &VectorSpace, w: &VectorSpace) -> Result<Vec<Embedding>> {
    if v.q() != w.q() {
        return Err(Error::InvalidArgument(format!("field mismatch: {} vs {}", v.q(), w.q())));
    }
    let consistent = |map: &[usize], _u: usize, cand: usize| {
        let mut basis: Vec<usize> = map.to_vec();
        basis.push(cand);
        w.independent(&basis)
    };
    let basis_images = backtrack_injections(v.d(), w.size(), &consistent);
    let mut out = Vec::with_capacity(basis_images.len());
    for images in basis_images {
        let mut map = Vec::with_capacity(v.size());
        for x in 0..v.size() {
            let coords = v.coords(x);
            let mut img = 0;
            for (i, &c) in coords.iter().enumerate() {
                img = w.add(img, w.scale(c, images[i]));
            }
            map.push(img);
        }
        out.push(map);
    }
    out.sort();
    Ok(out)
}
