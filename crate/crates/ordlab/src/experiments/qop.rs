use crate::admissibility::{admissible_orders, validate_inclusion, AdmissibleFamily};
use crate::error::{Error, Result};
use crate::orders::position_of;
use crate::structures::{Embedding, Structure};
use crate::Rational;
use num_bigint::BigInt;

/// Which map family the proportion ranges over.
#[derive(Debug, Clone, Copy)]
pub enum QopMode<'a> {
    /// Automorphisms of the host, composed with the inclusion.
    Automorphisms,
    /// A supplied embedding list (e.g. the restricted embeddings of a
    /// planting construction).
    Embeddings(&'a [Embedding]),
}

fn carries_order_into(map: &[usize], ord_a: &[usize], host_rank: &[usize]) -> bool {
    ord_a
        .windows(2)
        .all(|w| host_rank[map[w[0]]] < host_rank[map[w[1]]])
}

/// Proportion of maps carrying ord_a into ord_b: automorphisms pi of the
/// host with (pi . inc) order-preserving, or order-preserving members of a
/// supplied embedding list. Both orders must be admissible for the family
/// (the substructure inherits the family through the inclusion).
pub fn qop_proportion(
    a: &Structure,
    ord_a: &[usize],
    b: &Structure,
    ord_b: &[usize],
    inc: &[usize],
    family: &AdmissibleFamily,
    mode: QopMode<'_>,
) -> Result<Rational> {
    validate_inclusion(a, b, inc)?;
    if !admissible_orders(b, family)?.iter().any(|o| o == ord_b) {
        return Err(Error::InvalidArgument(
            "host order is not admissible for the family".into(),
        ));
    }
    let restricted_family = family.restrict(inc);
    if !admissible_orders(a, &restricted_family)?.iter().any(|o| o == ord_a) {
        return Err(Error::InvalidArgument(
            "substructure order is not admissible for the family".into(),
        ));
    }
    let host_rank = position_of(ord_b);
    let (hits, total) = match mode {
        QopMode::Automorphisms => {
            let auts = b.automorphisms()?;
            let hits = auts
                .iter()
                .filter(|pi| {
                    let composed: Vec<usize> = inc.iter().map(|&v| pi[v]).collect();
                    carries_order_into(&composed, ord_a, &host_rank)
                })
                .count();
            (hits, auts.len())
        }
        QopMode::Embeddings(list) => {
            if list.is_empty() {
                return Err(Error::InvalidArgument("empty embedding list".into()));
            }
            for e in list {
                if e.len() != a.size() || e.iter().any(|&v| v >= b.size()) {
                    return Err(Error::InvalidArgument(format!(
                        "embedding {e:?} does not map the substructure into the host"
                    )));
                }
            }
            let hits = list
                .iter()
                .filter(|e| carries_order_into(e, ord_a, &host_rank))
                .count();
            (hits, list.len())
        }
    };
    Ok(Rational::new(BigInt::from(hits), BigInt::from(total)))
}
