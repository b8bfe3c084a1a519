//! Steiner triple systems: every pair of points lies in exactly one triple.

use crate::error::{Error, Result};
use crate::graph::{binomial, Edge, RGraph};

/// The Fano plane as the difference set `{i, i+1, i+3} mod 7`.
pub fn fano() -> RGraph {
    let edges = (0..7).map(|i| [i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1]);
    RGraph::new(7, 3, edges).expect("valid triples")
}

/// The affine plane AG(2,3): points of `Z_3²`, lines are triples summing to zero.
pub fn sts9() -> RGraph {
    let label = |a: usize, b: usize| 3 * a + b + 1;
    let mut edges = Vec::new();
    for p in 0..9 {
        for q in p + 1..9 {
            let (pa, pb) = (p / 3, p % 3);
            let (qa, qb) = (q / 3, q % 3);
            let (ta, tb) = ((6 - pa - qa) % 3, (6 - pb - qb) % 3);
            edges.push([label(pa, pb), label(qa, qb), label(ta, tb)]);
        }
    }
    RGraph::new(9, 3, edges).expect("valid triples")
}

/// Whether every vertex pair lies in exactly one edge.
pub fn is_sts(s: &RGraph) -> Result<bool> {
    if s.r() != 3 {
        return Err(Error::UniformityMismatch {
            left: s.r(),
            right: 3,
        });
    }
    let n = s.n();
    let mut cover = vec![vec![0u32; n + 1]; n + 1];
    for e in s.edges() {
        let v = e.to_vec();
        for a in 0..3 {
            for b in a + 1..3 {
                cover[v[a]][v[b]] += 1;
            }
        }
    }
    let exact = (1..=n).all(|a| (a + 1..=n).all(|b| cover[a][b] == 1));
    debug_assert!(!exact || s.len() as u128 * 3 == binomial(n, 2));
    Ok(exact)
}

/// The existence condition `k ≡ 1, 3 (mod 6)`.
pub fn sts_exists(k: usize) -> bool {
    matches!(k % 6, 1 | 3)
}

/// Exhaustive exact-cover search for an STS on `k ≤ 15` points.
pub fn search_sts(k: usize) -> Result<Option<RGraph>> {
    if k > 15 {
        return Err(Error::ScaleGuard(format!(
            "STS search supports at most 15 points, got {k}"
        )));
    }
    if k < 3 || !binomial(k, 2).is_multiple_of(3) {
        return Ok(if k <= 1 {
            Some(RGraph::empty(k, 3)?)
        } else {
            None
        });
    }
    let mut covered = vec![0u64; k + 1];
    let mut edges = Vec::new();
    if sts_rec(k, &mut covered, &mut edges) {
        Ok(Some(RGraph::from_edges(k, 3, edges)?))
    } else {
        Ok(None)
    }
}

fn sts_rec(k: usize, covered: &mut [u64], edges: &mut Vec<Edge>) -> bool {
    // Smallest uncovered pair.
    let Some((a, b)) = (1..=k)
        .flat_map(|a| (a + 1..=k).map(move |b| (a, b)))
        .find(|&(a, b)| covered[a] & (1 << b) == 0)
    else {
        return true;
    };
    for c in 1..=k {
        if c == a || c == b || covered[a] & (1 << c) != 0 || covered[b] & (1 << c) != 0 {
            continue;
        }
        for (x, y) in [(a, b), (a, c), (b, c)] {
            covered[x] |= 1 << y;
            covered[y] |= 1 << x;
        }
        edges.push(Edge::from_vertices([a, b, c]));
        if sts_rec(k, covered, edges) {
            return true;
        }
        edges.pop();
        for (x, y) in [(a, b), (a, c), (b, c)] {
            covered[x] &= !(1 << y);
            covered[y] &= !(1 << x);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_systems() {
        assert!(is_sts(&fano()).unwrap());
        assert_eq!(fano().len(), 7);
        assert!(is_sts(&sts9()).unwrap());
        assert_eq!(sts9().len(), 12);
        assert!(!is_sts(&RGraph::complete(4, 3).unwrap()).unwrap());
        assert!(is_sts(&RGraph::complete(4, 2).unwrap()).is_err());
    }

    #[test]
    fn existence_matches_search() {
        for k in 0..=9 {
            let found = search_sts(k).unwrap();
            if let Some(s) = &found {
                assert!(is_sts(s).unwrap());
            }
            if k >= 3 {
                assert_eq!(found.is_some(), sts_exists(k), "k = {k}");
            }
        }
        assert!(search_sts(5).unwrap().is_none());
    }

    #[test]
    fn sts_is_partial_steiner_and_covered() {
        for s in [fano(), sts9()] {
            assert!(s.is_partial_steiner() && s.is_2_covered());
        }
    }
}
