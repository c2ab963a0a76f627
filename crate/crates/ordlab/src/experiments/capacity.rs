use crate::error::{Error, Result};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::One;

/// Expected number of induced embeddings of any fixed k-vertex pattern into
/// the uniform random r-uniform hypergraph on n vertices:
/// (n)_k * 2^(-(k choose r)). Independent of the pattern because every
/// r-subset of the image is constrained exactly once.
pub fn capacity(n: u64, k: u64, r: u64) -> Result<Rational> {
    if !(r <= k && k <= n) {
        return Err(Error::InvalidArgument(format!(
            "need r <= k <= n, got r={r}, k={k}, n={n}"
        )));
    }
    let mut falling = BigInt::one();
    for i in 0..k {
        falling *= BigInt::from(n - i);
    }
    let mut choose = BigInt::one();
    for i in 0..r {
        choose = choose * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    let exponent = u32::try_from(&choose)
        .map_err(|_| Error::SizeLimit {
            what: "capacity exponent",
            got: k as usize,
            max: 64,
        })?;
    Ok(Rational::new(falling, BigInt::from(2u8).pow(exponent)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{Structure, StructureKind};
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn pinned_values() {
        assert_eq!(capacity(4, 3, 2).unwrap(), rat(3, 1));
        assert_eq!(capacity(3, 3, 2).unwrap(), rat(3, 4));
        assert_eq!(capacity(5, 3, 2).unwrap(), rat(15, 2));
        assert_eq!(capacity(4, 4, 3).unwrap(), rat(3, 2));
    }

    #[test]
    fn rejects_misordered_parameters() {
        assert!(capacity(3, 4, 2).is_err());
        assert!(capacity(5, 2, 3).is_err());
    }

    /// Exhaustive mean of the embedding count over every labeled host equals
    /// the closed form, for every pattern shape tried.
    fn exhaustive_mean_matches(n: usize, k: usize, r: usize, patterns: &[Structure]) {
        let kind = if r == 2 {
            StructureKind::Graph
        } else {
            StructureKind::Hypergraph { r }
        };
        let hosts = kind.enumerate_labeled(n).unwrap();
        let want = capacity(n as u64, k as u64, r as u64).unwrap();
        for h in patterns {
            let total: u64 = hosts
                .iter()
                .map(|g| Structure::embeddings(h, g).unwrap().len() as u64)
                .sum();
            let mean = Rational::new(BigInt::from(total), BigInt::from(hosts.len() as u64));
            assert_eq!(mean, want, "pattern {}", h.label());
        }
    }

    #[test]
    fn mean_over_labeled_graphs_on_four_vertices() {
        use crate::structures::Hypergraph;
        let patterns = [
            Structure::Hypergraph(Hypergraph::path(3).unwrap()),
            Structure::Hypergraph(Hypergraph::complete(3, 2).unwrap()),
            Structure::Hypergraph(Hypergraph::empty(3, 2)),
        ];
        exhaustive_mean_matches(4, 3, 2, &patterns);
    }

    #[test]
    fn mean_over_labeled_graphs_on_five_vertices() {
        use crate::structures::Hypergraph;
        let patterns = [Structure::Hypergraph(Hypergraph::path(3).unwrap())];
        exhaustive_mean_matches(5, 3, 2, &patterns);
    }

    #[test]
    fn mean_over_three_uniform_hosts() {
        use crate::structures::Hypergraph;
        let patterns = [
            Structure::Hypergraph(Hypergraph::new(4, 3, vec![vec![0, 1, 2]]).unwrap()),
            Structure::Hypergraph(Hypergraph::empty(4, 3)),
        ];
        exhaustive_mean_matches(4, 4, 3, &patterns);
    }
}
