//! Finite-instance harnesses for the edge bound, degree stability and vertex
//! extendability statements. The stability statements are asymptotic, so a
//! failed implication on a small instance is reported, never raised.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::Result;
use crate::extremal::search::{gen_turan, turan_part_sizes};
use crate::families::{is_free, TrianglePattern};
use crate::graph::{Edge, Partition, RGraph, Vertex};
use crate::morph::is_isomorphic;

/// Default `ε` for the stability harnesses.
pub const DEFAULT_EPS: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EdgeBound {
    NotApplicable {
        witness: Option<[Edge; 3]>,
    },
    Checked {
        edges: usize,
        /// `n^r / r^r`.
        #[serde(serialize_with = "ser_ratio")]
        bound: Ratio<u128>,
        within: bool,
        equality: bool,
        divisible: bool,
        isomorphic_to_turan: bool,
        ok: bool,
    },
}

fn ser_ratio<S: serde::Serializer>(v: &Ratio<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `|H| ≤ n^r/r^r` for 𝒯_r-free `H`, with equality only for `T^r(n)` when `r | n`.
pub fn edge_bound_check(h: &RGraph) -> Result<EdgeBound> {
    let free = is_free(h, &TrianglePattern::t_family(h.r())?)?;
    if !free.free {
        return Ok(EdgeBound::NotApplicable {
            witness: free.witness,
        });
    }
    let (n, r) = (h.n() as u128, h.r() as u32);
    let num = n.pow(r);
    let den = (r as u128).pow(r);
    let edges = h.len();
    let lhs = edges as u128 * den;
    let within = lhs <= num;
    let equality = lhs == num;
    let divisible = n % r as u128 == 0;
    let isomorphic_to_turan =
        h.n() >= h.r() && is_isomorphic(h, &gen_turan(h.n(), h.r())?).is_some();
    Ok(EdgeBound::Checked {
        edges,
        bound: Ratio::new(num, den),
        within,
        equality,
        divisible,
        isomorphic_to_turan,
        ok: within && (!equality || (divisible && isomorphic_to_turan)),
    })
}

/// `n^{r−1}/r^{r−1} − ε·n^{r−1}`.
pub fn degree_threshold(n: usize, r: usize, eps: f64) -> f64 {
    let base = (n as f64).powi(r as i32 - 1);
    base / (r as f64).powi(r as i32 - 1) - eps * base
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeStability {
    pub delta_free: bool,
    pub min_degree: usize,
    pub threshold: f64,
    pub degree_ok: bool,
    pub partite: bool,
    pub partition: Option<Partition>,
    /// `delta_free ∧ degree_ok ⇒ partite` on this instance.
    pub implication_holds: bool,
}

pub fn degree_stability_check(h: &RGraph, eps: f64) -> Result<DegreeStability> {
    let delta_free = is_free(h, &TrianglePattern::delta(h.r())?)?.free;
    let min_degree = h.degrees().into_iter().min().unwrap_or(0);
    let threshold = degree_threshold(h.n(), h.r(), eps);
    let degree_ok = min_degree as f64 >= threshold;
    let partition = h.find_r_partition();
    let partite = partition.is_some();
    Ok(DegreeStability {
        delta_free,
        min_degree,
        threshold,
        degree_ok,
        partite,
        partition,
        implication_holds: !(delta_free && degree_ok) || partite,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Extendability {
    /// Some hypothesis fails; `witness` is a 𝕋_{r,1} copy when freeness is the one.
    NotApplicable {
        reason: String,
        witness: Option<[Edge; 3]>,
    },
    /// All hypotheses hold and `H` is r-partite.
    Extends { partition: Partition },
    /// All hypotheses hold but `H` is not r-partite.
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexExtendability {
    pub vertex: Vertex,
    pub t_free: bool,
    pub min_degree: usize,
    pub threshold: f64,
    pub degree_ok: bool,
    pub remainder_partite: bool,
    pub partite: bool,
    pub verdict: Extendability,
}

/// If `H` is 𝕋_{r,1}-free with large minimum degree and `H − v` is r-partite,
/// then `H` should be r-partite.
pub fn vertex_extendability_check(h: &RGraph, v: Vertex, eps: f64) -> Result<VertexExtendability> {
    h.check_vertex(v)?;
    let free = is_free(h, &TrianglePattern::single(h.r(), 1)?)?;
    let min_degree = h.degrees().into_iter().min().unwrap_or(0);
    let threshold = degree_threshold(h.n(), h.r(), eps);
    let degree_ok = min_degree as f64 >= threshold;
    let remainder_partite = h.remove_vertex(v)?.find_r_partition().is_some();
    let partition = h.find_r_partition();
    let partite = partition.is_some();
    let verdict = if !free.free {
        Extendability::NotApplicable {
            reason: "graph contains a copy of T(r,1)".into(),
            witness: free.witness,
        }
    } else if !degree_ok {
        Extendability::NotApplicable {
            reason: format!("minimum degree {min_degree} is below {threshold:.3}"),
            witness: None,
        }
    } else if !remainder_partite {
        Extendability::NotApplicable {
            reason: format!("removing vertex {v} does not leave an r-partite graph"),
            witness: None,
        }
    } else if let Some(partition) = partition.clone() {
        Extendability::Extends { partition }
    } else {
        Extendability::Counterexample
    };
    Ok(VertexExtendability {
        vertex: v,
        t_free: free.free,
        min_degree,
        threshold,
        degree_ok,
        remainder_partite,
        partite,
        verdict,
    })
}

/// `T^r(m)` plus a vertex `m + 1` joined to every transversal of the parts
/// other than `skip` (0-based), together with the extra link sets in `extra`.
fn turan_plus_vertex(m: usize, r: usize, skip: usize, extra: &[Vec<Vertex>]) -> Result<RGraph> {
    let t = gen_turan(m, r)?;
    let parts = turan_parts(m, r);
    let star = m + 1;
    let mut edges: Vec<Edge> = t.edges().to_vec();
    let others: Vec<&Vec<Vertex>> = parts
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != skip)
        .map(|(_, p)| p)
        .collect();
    for tr in transversals(&others) {
        edges.push(Edge::from_vertices(tr).with(star));
    }
    for e in extra {
        edges.push(Edge::from_vertices(e.iter().copied()).with(star));
    }
    RGraph::from_edges(m + 1, r, edges)
}

/// Parts of `T^r(m)` as labelled by [`gen_turan`].
pub fn turan_parts(m: usize, r: usize) -> Vec<Vec<Vertex>> {
    let mut next = 1;
    turan_part_sizes(m, r)
        .into_iter()
        .map(|s| {
            let p: Vec<Vertex> = (next..next + s).collect();
            next += s;
            p
        })
        .collect()
}

fn transversals(parts: &[&Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    for p in parts {
        out = out
            .into_iter()
            .flat_map(|t| {
                p.iter().map(move |&v| {
                    let mut t2 = t.clone();
                    t2.push(v);
                    t2
                })
            })
            .collect();
    }
    out
}

/// `T^r(m)` plus a vertex whose link is every transversal of parts `2..r`
/// and one extra set meeting part 1 twice. Needs `r ≥ 3` and parts of size ≥ 2.
pub fn doubled_part_link_construction(m: usize, r: usize) -> Result<RGraph> {
    let parts = turan_parts(m, r);
    if r < 3 || parts.iter().any(|p| p.len() < 2) {
        return Err(crate::error::Error::ScaleGuard(format!(
            "construction needs r ≥ 3 and every part of T^{r}({m}) of size at least 2"
        )));
    }
    let mut bad = vec![parts[0][0], parts[0][1]];
    bad.extend(parts[1..r - 2].iter().map(|p| p[0]));
    turan_plus_vertex(m, r, 0, &[bad])
}

/// `T^r(m)` plus a vertex whose link is every transversal of parts `1..r−1`
/// and one transversal of parts `2..r`. Needs parts of size ≥ 2.
pub fn crossing_link_construction(m: usize, r: usize) -> Result<RGraph> {
    let parts = turan_parts(m, r);
    if parts.iter().any(|p| p.len() < 2) {
        return Err(crate::error::Error::ScaleGuard(format!(
            "construction needs every part of T^{r}({m}) of size at least 2"
        )));
    }
    let cross: Vec<Vertex> = parts[1..].iter().map(|p| p[0]).collect();
    turan_plus_vertex(m, r, r - 1, &[cross])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::single_t_triple;

    #[test]
    fn edge_bound_examples() {
        match edge_bound_check(&gen_turan(6, 3).unwrap()).unwrap() {
            EdgeBound::Checked {
                equality,
                ok,
                isomorphic_to_turan,
                ..
            } => {
                assert!(equality && ok && isomorphic_to_turan)
            }
            v => panic!("{v:?}"),
        }
        match edge_bound_check(&gen_turan(7, 3).unwrap()).unwrap() {
            EdgeBound::Checked {
                edges,
                equality,
                ok,
                bound,
                ..
            } => {
                assert_eq!(edges, 12);
                assert!(!equality && ok);
                assert_eq!(bound, Ratio::new(343, 27));
            }
            v => panic!("{v:?}"),
        }
        for r in 2..=5 {
            match edge_bound_check(&RGraph::single_edge(r).unwrap()).unwrap() {
                EdgeBound::Checked { equality, ok, .. } => assert!(equality && ok),
                v => panic!("{v:?}"),
            }
        }
        assert!(matches!(
            edge_bound_check(&RGraph::complete(4, 3).unwrap()).unwrap(),
            EdgeBound::NotApplicable { witness: Some(_) }
        ));
    }

    #[test]
    fn turan_is_stable_and_extends() {
        for (n, r) in [(6, 2), (7, 2), (6, 3), (7, 3), (8, 4)] {
            let t = gen_turan(n, r).unwrap();
            let d = degree_stability_check(&t, 0.1).unwrap();
            assert!(d.delta_free && d.degree_ok && d.partite && d.implication_holds);
            for v in 1..=n {
                let x = vertex_extendability_check(&t, v, 0.1).unwrap();
                assert!(
                    matches!(x.verdict, Extendability::Extends { .. }),
                    "{n} {r} {v}"
                );
            }
        }
    }

    #[test]
    fn constructions_expose_a_copy() {
        for (m, r) in [(6, 3), (8, 4)] {
            let h = doubled_part_link_construction(m, r).unwrap();
            let x = vertex_extendability_check(&h, m + 1, DEFAULT_EPS).unwrap();
            assert!(x.remainder_partite && !x.partite);
            match x.verdict {
                Extendability::NotApplicable {
                    witness: Some([a, b, c]),
                    ..
                } => {
                    assert!(single_t_triple(a, b, c, 1))
                }
                v => panic!("{v:?}"),
            }
        }
        for (m, r) in [(4, 2), (6, 2), (6, 3), (8, 4)] {
            let h = crossing_link_construction(m, r).unwrap();
            let x = vertex_extendability_check(&h, m + 1, DEFAULT_EPS).unwrap();
            assert!(x.remainder_partite && !x.partite);
            assert!(matches!(
                x.verdict,
                Extendability::NotApplicable {
                    witness: Some(_),
                    ..
                }
            ));
            let d = degree_stability_check(&h, DEFAULT_EPS).unwrap();
            assert!(!d.delta_free && d.implication_holds);
        }
    }
}
