//! Tagged union over the structure kinds that carry order laws, plus
//! kind-level enumeration of all labeled structures of a given size.

use super::{
    all_equiv_structures, all_hypergraphs, all_subsets, all_vector_spaces, equiv_embeddings,
    hypergraph_embeddings, vector_space_embeddings, EquivStructure, Hypergraph, VectorSpace,
};
use crate::error::{Error, Result};

/// Structure kinds a family-level check can quantify over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Graph,
    Hypergraph { r: usize },
    Equiv,
    Vector,
}

/// A structure an ordering family assigns a distribution to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Structure {
    Hypergraph(Hypergraph),
    Equiv(EquivStructure),
    Vector(VectorSpace),
}

impl Structure {
    pub fn size(&self) -> usize {
        match self {
            Structure::Hypergraph(g) => g.n(),
            Structure::Equiv(e) => e.n(),
            Structure::Vector(v) => v.size(),
        }
    }

    /// Single-line rendering, used for witness reports and seed derivation.
    pub fn label(&self) -> String {
        match self {
            Structure::Hypergraph(g) => {
                let edges: Vec<String> = g
                    .edges()
                    .iter()
                    .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("hypergraph r={} n={} [{}]", g.r(), g.n(), edges.join("; "))
            }
            Structure::Equiv(e) => {
                let ids: Vec<String> = (0..e.n()).map(|x| e.class_of(x).to_string()).collect();
                format!("equiv n={} [{}]", e.n(), ids.join(" "))
            }
            Structure::Vector(v) => format!("vector q={} d={}", v.q(), v.d()),
        }
    }

    /// Universes of proper-or-full substructures: all non-empty subsets for
    /// hypergraphs and equivalence structures, linear subspaces of dimension
    /// >= 1 for vector spaces (the zero subspace has a one-point universe, on
    /// which all order laws coincide).
    pub fn substructure_subsets(&self) -> Result<Vec<Vec<usize>>> {
        match self {
            Structure::Hypergraph(g) => Ok(all_subsets(g.n())),
            Structure::Equiv(e) => Ok(all_subsets(e.n())),
            Structure::Vector(v) => Ok(v
                .subspaces()?
                .into_iter()
                .filter(|s| s.len() >= 2)
                .collect()),
        }
    }

    /// Abstract substructure on universe S plus the map sending each element
    /// of the abstract universe to its position in sorted S.
    pub fn canonical_sub(&self, s: &[usize]) -> Result<(Structure, Vec<usize>)> {
        match self {
            Structure::Hypergraph(g) => {
                let (sub, _) = g.induced(s)?;
                Ok((Structure::Hypergraph(sub), (0..s.len()).collect()))
            }
            Structure::Equiv(e) => {
                let (sub, _) = e.induced(s)?;
                Ok((Structure::Equiv(sub), (0..s.len()).collect()))
            }
            Structure::Vector(w) => {
                let mut basis: Vec<usize> = Vec::new();
                for &x in s {
                    if x == 0 {
                        continue;
                    }
                    let mut cand = basis.clone();
                    cand.push(x);
                    if w.independent(&cand) {
                        basis = cand;
                    }
                }
                let v = VectorSpace::new(w.q(), basis.len())?;
                let mut to_pos = Vec::with_capacity(v.size());
                for a in 0..v.size() {
                    let coeffs = v.coords(a);
                    let mut img = 0;
                    for (c, b) in coeffs.iter().zip(&basis) {
                        img = w.add(img, w.scale(*c, *b));
                    }
                    let pos = s
                        .binary_search(&img)
                        .map_err(|_| Error::InvalidArgument("subset is not a subspace".into()))?;
                    to_pos.push(pos);
                }
                Ok((Structure::Vector(v), to_pos))
            }
        }
    }

    /// All induced embeddings a -> b (kinds must agree).
    pub fn embeddings(a: &Structure, b: &Structure) -> Result<Vec<Vec<usize>>> {
        match (a, b) {
            (Structure::Hypergraph(x), Structure::Hypergraph(y)) => hypergraph_embeddings(x, y),
            (Structure::Equiv(x), Structure::Equiv(y)) => Ok(equiv_embeddings(x, y)),
            (Structure::Vector(x), Structure::Vector(y)) => vector_space_embeddings(x, y),
            _ => Err(Error::InvalidArgument("structure kind mismatch".into())),
        }
    }

    /// All isomorphisms a -> b (empty unless sizes and kinds agree).
    pub fn isomorphisms(a: &Structure, b: &Structure) -> Result<Vec<Vec<usize>>> {
        if a.size() != b.size() {
            return Ok(vec![]);
        }
        match (a, b) {
            (Structure::Hypergraph(x), Structure::Hypergraph(y)) => {
                if x.edge_count() != y.edge_count() {
                    return Ok(vec![]);
                }
                hypergraph_embeddings(x, y)
            }
            _ => Structure::embeddings(a, b),
        }
    }

    pub fn is_isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
        Ok(!Structure::isomorphisms(a, b)?.is_empty())
    }

    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        Structure::isomorphisms(self, self)
    }
}

impl StructureKind {
    /// Every labeled structure of this kind with the given universe size.
    pub fn enumerate_labeled(&self, n: usize) -> Result<Vec<Structure>> {
        match self {
            StructureKind::Graph => Ok(all_hypergraphs(n, 2)?
                .into_iter()
                .map(Structure::Hypergraph)
                .collect()),
            StructureKind::Hypergraph { r } => Ok(all_hypergraphs(n, *r)?
                .into_iter()
                .map(Structure::Hypergraph)
                .collect()),
            StructureKind::Equiv => Ok(all_equiv_structures(n)?
                .into_iter()
                .map(Structure::Equiv)
                .collect()),
            StructureKind::Vector => Ok(all_vector_spaces(n)
                .into_iter()
                .filter(|v| v.size() == n)
                .map(Structure::Vector)
                .collect()),
        }
    }
}
