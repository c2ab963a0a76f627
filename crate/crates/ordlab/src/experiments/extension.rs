use crate::error::{Error, Result};
use crate::orders::is_perm;
use crate::Rational;
use num_bigint::BigInt;

/// Exhaustive enumeration cap on the combined universe size.
pub const MAX_EXTENSION_UNIVERSE: usize = 10;

/// Exact counts over every linear order of X + nY: X has k elements, each of
/// the n copies of Y has m. The event is "extends the pattern restricted to
/// X, but extends no full copy of the pattern".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionRatios {
    pub universe: usize,
    pub total: u64,
    pub extends_x: u64,
    pub event: u64,
    /// event / total.
    pub unconditional: Rational,
    /// event / extends_x.
    pub conditional: Rational,
}

fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut arr: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&arr);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                arr.swap(0, i);
            } else {
                arr.swap(c[i], i);
            }
            visit(&arr);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `pattern` is a linear order on k + m elements given as the ascending
/// element sequence; elements 0..k are X, elements k..k+m are Y. The copy i
/// of Y occupies universe elements k + i*m .. k + (i+1)*m.
pub fn extension_lemma_ratio(
    k: usize,
    m: usize,
    pattern: &[usize],
    n: usize,
) -> Result<ExtensionRatios> {
    if k < 1 || m < 1 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "need k, m, n >= 1, got k={k}, m={m}, n={n}"
        )));
    }
    if pattern.len() != k + m || !is_perm(pattern) {
        return Err(Error::InvalidArgument(
            "pattern must be a permutation of the k + m pattern elements".into(),
        ));
    }
    let universe = k + n * m;
    if universe > MAX_EXTENSION_UNIVERSE {
        return Err(Error::SizeLimit {
            what: "extension universe",
            got: universe,
            max: MAX_EXTENSION_UNIVERSE,
        });
    }

    let x_seq: Vec<usize> = pattern.iter().copied().filter(|&e| e < k).collect();
    let copy_seqs: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            pattern
                .iter()
                .map(|&e| if e < k { e } else { k + i * m + (e - k) })
                .collect()
        })
        .collect();

    let mut total = 0u64;
    let mut extends_x = 0u64;
    let mut event = 0u64;
    let mut pos = vec![0usize; universe];
    for_each_permutation(universe, |arr| {
        total += 1;
        for (p, &e) in arr.iter().enumerate() {
            pos[e] = p;
        }
        let increasing = |seq: &[usize]| seq.windows(2).all(|w| pos[w[0]] < pos[w[1]]);
        if !increasing(&x_seq) {
            return;
        }
        extends_x += 1;
        if copy_seqs.iter().all(|seq| !increasing(seq)) {
            event += 1;
        }
    });

    Ok(ExtensionRatios {
        universe,
        total,
        extends_x,
        event,
        unconditional: Rational::new(BigInt::from(event), BigInt::from(total)),
        conditional: Rational::new(BigInt::from(event), BigInt::from(extends_x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn gap_pattern_ratio_is_one_over_n_plus_two() {
        // Pattern a1 < b < a2 with elements a1=0, a2=1, b=2: the event say
        // that a1 precedes a2 with no copy element between them, which
        // forces the pair adjacent: (n+1)! orders out of (n+2)!.
        for n in 1..=5 {
            let r = extension_lemma_ratio(2, 1, &[0, 2, 1], n).unwrap();
            assert_eq!(r.unconditional, rat(1, (n + 2) as i64), "n = {n}");
            // Half of all orders put a1 before a2.
            assert_eq!(r.extends_x * 2, r.total);
            assert_eq!(r.conditional, rat(2, (n + 2) as i64));
        }
    }

    #[test]
    fn all_copies_after_pattern() {
        // Pattern b < a1 (k=1, m=1): the event needs every copy to break
        // b_i < a1, i.e. a1 first among three elements: 1/(n+1) at n=2.
        let r = extension_lemma_ratio(1, 1, &[1, 0], 2).unwrap();
        assert_eq!(r.unconditional, rat(1, 3));
        // X has one element, so conditioning is vacuous.
        assert_eq!(r.extends_x, r.total);
        assert_eq!(r.conditional, rat(1, 3));
    }

    #[test]
    fn two_element_copies() {
        // Pattern a1 < y1 < y2 (k=1, m=2), n=2: universe of 5. The event is
        // checked against a direct closed form: orders where neither copy
        // appears in pattern position. Exhaustive count is the oracle here;
        // assert the two ratios agree with the raw counts.
        let r = extension_lemma_ratio(1, 2, &[0, 1, 2], 2).unwrap();
        assert_eq!(r.universe, 5);
        assert_eq!(r.total, 120);
        assert_eq!(r.extends_x, 120);
        assert_eq!(
            r.unconditional,
            Rational::new(BigInt::from(r.event), BigInt::from(120u32))
        );
        // The event must exclude orders extending copy 1, e.g. a1<y11<y12
        // with the other copy anywhere: sanity bound event < total.
        assert!(r.event < r.total);
    }

    #[test]
    fn ratio_shrinks_with_more_copies() {
        let mut last = rat(1, 1);
        for n in 1..=5 {
            let r = extension_lemma_ratio(2, 1, &[0, 2, 1], n).unwrap();
            assert!(r.unconditional < last);
            last = r.unconditional;
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(extension_lemma_ratio(0, 1, &[0], 1).is_err());
        assert!(extension_lemma_ratio(2, 1, &[0, 1], 1).is_err());
        assert!(extension_lemma_ratio(2, 1, &[0, 0, 1], 1).is_err());
        // 2 + 5*2 = 12 > 10.
        assert!(matches!(
            extension_lemma_ratio(2, 2, &[0, 2, 1, 3], 5),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn permutation_generator_is_exhaustive() {
        let mut seen = std::collections::BTreeSet::new();
        for_each_permutation(4, |arr| {
            seen.insert(arr.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }
}
