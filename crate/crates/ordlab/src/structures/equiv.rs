use crate::error::{Error, Result};

/// Equivalence-relation structure: a partition of 0..n-1 into classes.
/// Class ids are normalized to first-occurrence order, so equal partitions
/// have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivStructure {
    n: usize,
    class_of: Vec<usize>,
    n_classes: usize,
}

impl EquivStructure {
    pub fn new(class_of: Vec<usize>) -> Self {
        let n = class_of.len();
        let mut relabel: std::collections::BTreeMap<usize, usize> = Default::default();
        let mut normalized = Vec::with_capacity(n);
        for c in class_of {
            let next = relabel.len();
            let idx = *relabel.entry(c).or_insert(next);
            normalized.push(idx);
        }
        let n_classes = relabel.len();
        Self { n, class_of: normalized, n_classes }
    }

    /// Builds from explicit classes; elements must partition 0..n-1.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(Error::InvalidStructure(format!(
                        "classes do not partition 0..{n} (element {x})"
                    )));
                }
                class_of[x] = c;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::InvalidStructure("classes do not cover the universe".into()));
        }
        Ok(Self::new(class_of))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Classes as sorted member lists, indexed by class id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Induced substructure on S, relabeled ascending; new-to-old map returned.
    pub fn induced(&self, s: &[usize]) -> Result<(EquivStructure, Vec<usize>)> {
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() || sorted.last().is_some_and(|&v| v >= self.n) {
            return Err(Error::InvalidArgument("invalid subset".into()));
        }
        let sub = EquivStructure::new(sorted.iter().map(|&v| self.class_of[v]).collect());
        Ok((sub, sorted))
    }
}
