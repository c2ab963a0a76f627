use crate::error::{Error, Result};
use itertools::Itertools;

/// A linear order on 0..n-1, listed least element first.
pub type Perm = Vec<usize>;

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        if x < seen.len() && !seen[x] {
            seen[x] = true;
            true
        } else {
            false
        }
    })
}

/// All n! orders in lexicographic order of their sequences.
pub fn all_perms(n: usize) -> Vec<Perm> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..n).permutations(n).collect()
}

/// Serialization key per the order-distribution schema: "0,2,1".
pub fn perm_key(p: &[usize]) -> String {
    p.iter().map(|x| x.to_string()).join(",")
}

pub fn parse_perm_key(s: &str) -> Result<Perm> {
    let p: Perm = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad order key `{s}`")))
        })
        .collect::<Result<_>>()?;
    if !is_perm(&p) {
        return Err(Error::InvalidArgument(format!(
            "`{s}` is not a permutation"
        )));
    }
    Ok(p)
}

/// position_of(p)[v] = rank of element v in the order p.
pub fn position_of(p: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Restriction of an order on 0..n-1 to a sorted subset S, relabeled so that
/// the i-th smallest element of S becomes i. Mirrors the relabeling of
/// induced substructures.
pub fn restrict_perm(p: &[usize], s: &[usize]) -> Result<Perm> {
    if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&x| x >= p.len()) {
        return Err(Error::InvalidArgument(
            "subset must be sorted, distinct, in range".into(),
        ));
    }
    Ok(p.iter()
        .filter_map(|v| s.binary_search(v).ok())
        .collect())
}

/// Push-forward along a bijection phi: the image order ranks phi(v) exactly
/// where v was ranked.
pub fn pushforward_perm(p: &[usize], phi: &[usize]) -> Result<Perm> {
    if phi.len() != p.len() || !is_perm(phi) {
        return Err(Error::InvalidArgument(
            "push-forward map must be a bijection on the universe".into(),
        ));
    }
    Ok(p.iter().map(|&v| phi[v]).collect())
}
