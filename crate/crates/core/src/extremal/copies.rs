//! Copy counting, the auxiliary k-graph and L-intersecting graphs.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::search::dedup_isomorphic;
use crate::graph::{all_r_subsets, binomial, Edge, RGraph, Vertex};
use crate::lagrangian::{maximize, MaximizeConfig, EXACT_MAX_VERTICES};
use crate::morph::find_embedding;
use crate::parallel::par_map;

pub const COPY_PATTERN_MAX_VERTICES: usize = 12;
const SUBSET_GUARD: u128 = 5_000_000;
/// Cap on maximal L-intersecting graphs enumerated by the survey.
pub const SURVEY_GRAPH_CAP: usize = 200_000;

fn spanning_sets(h: &RGraph, s: &RGraph) -> Result<Vec<Edge>> {
    if h.r() != s.r() {
        return Err(Error::UniformityMismatch {
            left: h.r(),
            right: s.r(),
        });
    }
    let k = s.n();
    if k > COPY_PATTERN_MAX_VERTICES {
        return Err(Error::ScaleGuard(format!(
            "pattern has {k} vertices, limit is {COPY_PATTERN_MAX_VERTICES}"
        )));
    }
    if binomial(h.n(), k) > SUBSET_GUARD {
        return Err(Error::ScaleGuard(format!(
            "C({}, {k}) vertex subsets exceed {SUBSET_GUARD}",
            h.n()
        )));
    }
    if k > h.n() {
        return Ok(Vec::new());
    }
    let subsets: Vec<Vec<Vertex>> = (1..=h.n()).combinations(k).collect();
    let hits = par_map(subsets, |vs| {
        let g = h.induced(&vs).expect("in range");
        let spans = g.len() >= s.len() && matches!(find_embedding(s, &g), Ok(Some(_)));
        spans.then(|| Edge::from_vertices(vs))
    });
    Ok(hits.into_iter().flatten().collect())
}

/// Number of `v(S)`-subsets of `V(H)` whose induced subgraph contains a copy of `S`.
pub fn count_copies(h: &RGraph, s: &RGraph) -> Result<u64> {
    Ok(spanning_sets(h, s)?.len() as u64)
}

/// The `v(S)`-graph on `V(H)` whose edges are the sets spanning a copy of `S`.
pub fn aux_kgraph(h: &RGraph, s: &RGraph) -> Result<RGraph> {
    let sets = spanning_sets(h, s)?;
    RGraph::from_edges(h.n(), s.n(), sets)
}

/// Whether every two distinct edges meet in a number of vertices from `l`.
pub fn l_intersect_check(h: &RGraph, l: &[usize]) -> bool {
    let es = h.edges();
    es.iter()
        .tuple_combinations()
        .all(|(a, b)| l.contains(&a.intersection(*b).len()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyReport {
    pub r: usize,
    pub l: Vec<usize>,
    pub n_max: usize,
    /// Maximal L-intersecting graphs up to isomorphism.
    pub graphs_examined: usize,
    pub best_value: f64,
    pub witnesses: Vec<RGraph>,
    pub all_certified: bool,
    pub equals_edge_value: bool,
}

/// Enumerates the maximal L-intersecting r-graphs on `n_max` vertices
/// (first edge `{1..r}`), maximizes the Lagrangian of each and reports the best.
pub fn l_intersect_lagrangian_survey(
    r: usize,
    l: &[usize],
    n_max: usize,
    cfg: &MaximizeConfig,
) -> Result<SurveyReport> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    if n_max < r {
        return Err(Error::InvalidUniformity(r));
    }
    if n_max > EXACT_MAX_VERTICES || binomial(n_max, r) > 64 {
        return Err(Error::ScaleGuard(format!(
            "survey supports at most {EXACT_MAX_VERTICES} vertices and 64 candidate edges"
        )));
    }
    let cand = all_r_subsets(n_max, r);
    let ok = |a: Edge, b: Edge| l.contains(&a.intersection(b).len());
    let mut maximal: Vec<Vec<Edge>> = Vec::new();
    let mut cur = vec![cand[0]];
    survey_rec(&cand, 1, &mut cur, &ok, &mut maximal)?;
    let graphs: Vec<RGraph> = maximal
        .into_iter()
        .map(|es| RGraph::from_edges(n_max, r, es))
        .collect::<Result<_>>()?;
    let reps = dedup_isomorphic(graphs);
    let results = par_map(reps.clone(), |g| maximize(&g, cfg));
    let mut best = f64::NEG_INFINITY;
    let mut all_certified = true;
    let mut values = Vec::with_capacity(results.len());
    for res in results {
        let res = res?;
        all_certified &= res.certified;
        best = best.max(res.value);
        values.push(res.value);
    }
    let witnesses = reps
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v >= best - cfg.tol)
        .map(|(g, _)| g.clone())
        .collect();
    let edge_value = (r as f64).powi(-(r as i32));
    Ok(SurveyReport {
        r,
        l: l.to_vec(),
        n_max,
        graphs_examined: reps.len(),
        best_value: best,
        witnesses,
        all_certified,
        equals_edge_value: (best - edge_value).abs() <= cfg.tol,
    })
}

fn survey_rec(
    cand: &[Edge],
    idx: usize,
    cur: &mut Vec<Edge>,
    ok: &dyn Fn(Edge, Edge) -> bool,
    out: &mut Vec<Vec<Edge>>,
) -> Result<()> {
    if idx == cand.len() {
        let maximal = cand
            .iter()
            .filter(|e| !cur.contains(e))
            .all(|&e| cur.iter().any(|&c| !ok(c, e)));
        if maximal {
            if out.len() >= SURVEY_GRAPH_CAP {
                return Err(Error::ScaleGuard(format!(
                    "more than {SURVEY_GRAPH_CAP} maximal graphs"
                )));
            }
            out.push(cur.clone());
        }
        return Ok(());
    }
    let e = cand[idx];
    if cur.iter().all(|&c| ok(c, e)) {
        cur.push(e);
        survey_rec(cand, idx + 1, cur, ok, out)?;
        cur.pop();
        // Skipping a compatible edge can only lead to a maximal graph if some
        // later edge blocks it.
        let blockable = cand[idx + 1..].iter().any(|&f| !ok(f, e));
        if !blockable {
            return Ok(());
        }
    }
    survey_rec(cand, idx + 1, cur, ok, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::gen_turan;
    use crate::morph::is_isomorphic;
    use crate::steiner::fano;

    #[test]
    fn copy_counts() {
        let t = gen_turan(6, 3).unwrap();
        assert_eq!(
            count_copies(&t, &RGraph::single_edge(3).unwrap()).unwrap(),
            8
        );
        assert_eq!(count_copies(&fano(), &fano()).unwrap(), 1);
        assert_eq!(
            count_copies(&fano().blowup(&[2; 7]).unwrap(), &fano()).unwrap(),
            128
        );
    }

    #[test]
    fn aux_examples() {
        let a = aux_kgraph(&fano(), &fano()).unwrap();
        assert_eq!(a.r(), 7);
        assert_eq!(a.len(), 1);
        let none = aux_kgraph(&gen_turan(7, 3).unwrap(), &fano()).unwrap();
        assert!(none.is_empty());
        let sizes = [1, 2, 1, 1, 2, 1, 1];
        let lhs = aux_kgraph(&fano().blowup(&sizes).unwrap(), &fano()).unwrap();
        let rhs = aux_kgraph(&fano(), &fano())
            .unwrap()
            .blowup(&sizes)
            .unwrap();
        assert!(is_isomorphic(&lhs, &rhs).is_some());
    }

    #[test]
    fn l_intersect_examples() {
        assert!(l_intersect_check(&fano(), &[1]));
        let k4minus = RGraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).unwrap();
        assert!(!l_intersect_check(&k4minus, &[1]));
        assert!(l_intersect_check(&RGraph::single_edge(3).unwrap(), &[]));
    }

    #[test]
    fn matchings_survey() {
        let rep = l_intersect_lagrangian_survey(2, &[0], 6, &MaximizeConfig::default()).unwrap();
        assert!((rep.best_value - 0.25).abs() < 1e-12);
        assert!(rep.equals_edge_value && rep.all_certified);
        let rep = l_intersect_lagrangian_survey(3, &[0], 7, &MaximizeConfig::default()).unwrap();
        assert!(rep.equals_edge_value);
    }

    #[test]
    fn fano_survey() {
        let rep = l_intersect_lagrangian_survey(3, &[1], 7, &MaximizeConfig::default()).unwrap();
        assert!(rep.best_value >= 1.0 / 27.0 - 1e-12);
        assert!(rep.all_certified);
    }
}
