//! Exhaustive search for Turán numbers `ex(n, F)` over small vertex sets.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{completes_forbidden, TrianglePattern};
use crate::graph::{all_r_subsets, binomial, Edge, RGraph};
use crate::morph::is_isomorphic;
use crate::parallel::par_map;

/// Largest number of candidate edges `C(n, r)` searched exhaustively.
pub const COMPLETE_EDGE_GUARD: u128 = 24;
const SPLIT_DEPTH: usize = 8;

/// The balanced complete r-partite r-graph; the first `n mod r` parts get the
/// extra vertex and parts are labelled consecutively.
pub fn gen_turan(n: usize, r: usize) -> Result<RGraph> {
    if r == 0 || n < r {
        return Err(Error::InvalidUniformity(r));
    }
    let sizes = turan_part_sizes(n, r);
    RGraph::single_edge(r)?.blowup(&sizes)
}

pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|k| n / r + usize::from(k < n % r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Allows instances beyond the guard, answered by randomized greedy only.
    pub incomplete: bool,
    /// Greedy runs in incomplete mode.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            incomplete: false,
            restarts: 64,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "ser_display")]
    pub pattern: TrianglePattern,
    pub max_edges: usize,
    /// Pairwise non-isomorphic graphs attaining `max_edges`.
    pub witnesses: Vec<RGraph>,
    pub labeled_witnesses: usize,
    pub nodes_explored: u64,
    /// False for the randomized lower bound of incomplete mode.
    pub complete: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

struct Dfs<'a> {
    cand: &'a [Edge],
    pattern: &'a TrianglePattern,
    best: usize,
    found: Vec<Vec<Edge>>,
    nodes: u64,
}

impl Dfs<'_> {
    fn rec(&mut self, idx: usize, cur: &mut Vec<Edge>) {
        self.nodes += 1;
        if cur.len() + (self.cand.len() - idx) < self.best {
            return;
        }
        if idx == self.cand.len() {
            if cur.len() > self.best {
                self.best = cur.len();
                self.found.clear();
            }
            self.found.push(cur.clone());
            return;
        }
        let e = self.cand[idx];
        if !completes_forbidden(cur, e, self.pattern) {
            cur.push(e);
            self.rec(idx + 1, cur);
            cur.pop();
        }
        self.rec(idx + 1, cur);
    }
}

/// Pattern-free partial assignments of the first `depth` candidates.
fn prefixes(cand: &[Edge], p: &TrianglePattern, depth: usize) -> (Vec<Vec<Edge>>, u64) {
    let mut layer = vec![Vec::new()];
    let mut nodes = 0u64;
    for &e in &cand[..depth] {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for cur in layer {
            nodes += 1;
            if !completes_forbidden(&cur, e, p) {
                let mut with = cur.clone();
                with.push(e);
                next.push(with);
            }
            next.push(cur);
        }
        layer = next;
    }
    (layer, nodes)
}

fn greedy(cand: &[Edge], p: &TrianglePattern) -> Vec<Edge> {
    let mut cur = Vec::new();
    for &e in cand {
        if !completes_forbidden(&cur, e, p) {
            cur.push(e);
        }
    }
    cur
}

/// Representatives of `graphs` up to isomorphism, in first-seen order.
pub fn dedup_isomorphic(graphs: Vec<RGraph>) -> Vec<RGraph> {
    let mut reps: Vec<(Vec<usize>, RGraph)> = Vec::new();
    for g in graphs {
        let mut deg = g.degrees();
        deg.sort_unstable();
        if !reps
            .iter()
            .any(|(d, h)| *d == deg && is_isomorphic(&g, h).is_some())
        {
            reps.push((deg, g));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}

/// Maximum edge count of a pattern-free r-graph on `n` vertices, with all
/// extremal graphs up to isomorphism.
pub fn ex_search(
    n: usize,
    r: usize,
    p: &TrianglePattern,
    cfg: &SearchConfig,
) -> Result<ExtremalReport> {
    if p.r != r {
        return Err(Error::UniformityMismatch {
            left: r,
            right: p.r,
        });
    }
    if n < r {
        return Err(Error::InvalidUniformity(r));
    }
    let start = Instant::now();
    let potential = binomial(n, r);
    if potential > COMPLETE_EDGE_GUARD {
        if !cfg.incomplete {
            return Err(Error::ScaleGuard(format!(
                "C({n},{r}) = {potential} candidate edges exceed the exhaustive limit of {COMPLETE_EDGE_GUARD}; pass the incomplete flag for a heuristic lower bound"
            )));
        }
        return incomplete_search(n, r, p, cfg, start);
    }
    let cand = all_r_subsets(n, r);
    let floor = greedy(&cand, p).len();
    let depth = SPLIT_DEPTH.min(cand.len());
    let (tasks, prefix_nodes) = prefixes(&cand, p, depth);
    let results = par_map(tasks, |mut cur| {
        let mut dfs = Dfs {
            cand: &cand,
            pattern: p,
            best: floor,
            found: Vec::new(),
            nodes: 0,
        };
        dfs.rec(depth, &mut cur);
        (dfs.best, dfs.found, dfs.nodes)
    });
    let max_edges = results
        .iter()
        .filter(|(_, f, _)| !f.is_empty())
        .map(|(b, _, _)| *b)
        .max()
        .unwrap_or(0);
    let nodes = prefix_nodes + results.iter().map(|(_, _, k)| k).sum::<u64>();
    let labeled: Vec<RGraph> = results
        .into_iter()
        .filter(|(b, _, _)| *b == max_edges)
        .flat_map(|(_, f, _)| f)
        .map(|edges| RGraph::from_edges(n, r, edges))
        .collect::<Result<_>>()?;
    let labeled_witnesses = labeled.len();
    Ok(ExtremalReport {
        n,
        r,
        pattern: *p,
        max_edges,
        witnesses: dedup_isomorphic(labeled),
        labeled_witnesses,
        nodes_explored: nodes,
        complete: true,
        wall_time: start.elapsed(),
    })
}

fn incomplete_search(
    n: usize,
    r: usize,
    p: &TrianglePattern,
    cfg: &SearchConfig,
    start: Instant,
) -> Result<ExtremalReport> {
    if n > crate::graph::MAX_VERTICES || binomial(n, r) > 1_000_000 {
        return Err(Error::ScaleGuard(format!(
            "C({n},{r}) candidate edges are too many even for the greedy heuristic"
        )));
    }
    let cand = all_r_subsets(n, r);
    let runs = par_map((0..cfg.restarts.max(1)).collect(), |k: usize| {
        let mut order = cand.clone();
        if k > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
            order.shuffle(&mut rng);
        }
        let mut g = greedy(&order, p);
        g.sort();
        g
    });
    let max_edges = runs.iter().map(Vec::len).max().unwrap_or(0);
    let mut best: Vec<Vec<Edge>> = runs.into_iter().filter(|g| g.len() == max_edges).collect();
    best.sort();
    best.dedup();
    let labeled: Vec<RGraph> = best
        .into_iter()
        .map(|edges| RGraph::from_edges(n, r, edges))
        .collect::<Result<_>>()?;
    Ok(ExtremalReport {
        n,
        r,
        pattern: *p,
        max_edges,
        labeled_witnesses: labeled.len(),
        witnesses: dedup_isomorphic(labeled),
        nodes_explored: (cfg.restarts.max(1) * cand.len()) as u64,
        complete: false,
        wall_time: start.elapsed(),
    })
}

/// Calls `visit` on the edge list of every pattern-free labelled r-graph on
/// `n` vertices, including the empty one. Returns the number visited.
pub fn for_each_free_graph<F>(n: usize, r: usize, p: &TrianglePattern, mut visit: F) -> Result<u64>
where
    F: FnMut(&[Edge]),
{
    if binomial(n, r) > COMPLETE_EDGE_GUARD {
        return Err(Error::ScaleGuard(format!(
            "C({n},{r}) candidate edges exceed the exhaustive limit of {COMPLETE_EDGE_GUARD}"
        )));
    }
    let cand = all_r_subsets(n, r);
    fn rec<F: FnMut(&[Edge])>(
        cand: &[Edge],
        p: &TrianglePattern,
        idx: usize,
        cur: &mut Vec<Edge>,
        visit: &mut F,
    ) -> u64 {
        if idx == cand.len() {
            visit(cur);
            return 1;
        }
        let e = cand[idx];
        let mut count = 0;
        if !completes_forbidden(cur, e, p) {
            cur.push(e);
            count += rec(cand, p, idx + 1, cur, visit);
            cur.pop();
        }
        count + rec(cand, p, idx + 1, cur, visit)
    }
    Ok(rec(&cand, p, 0, &mut Vec::new(), &mut visit))
}

/// Every 2-covered pattern-free labelled r-graph on `n` vertices. A branch is
/// cut once some uncovered pair has no remaining candidate edge that could
/// still be added.
pub fn two_covered_free_graphs(n: usize, r: usize, p: &TrianglePattern) -> Result<Vec<RGraph>> {
    if binomial(n, r) > 64 {
        return Err(Error::ScaleGuard(format!(
            "C({n},{r}) candidate edges exceed the limit of 64"
        )));
    }
    if n < r {
        return Ok(Vec::new());
    }
    let cand = all_r_subsets(n, r);
    let pairs: Vec<Edge> = all_r_subsets(n, 2);
    // Candidate indices containing each pair.
    let covering: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&q| (0..cand.len()).filter(|&i| q.is_subset(cand[i])).collect())
        .collect();
    let mut out = Vec::new();
    struct Ctx<'a> {
        cand: &'a [Edge],
        pairs: &'a [Edge],
        covering: &'a [Vec<usize>],
        p: &'a TrianglePattern,
    }
    fn feasible(ctx: &Ctx<'_>, idx: usize, cur: &[Edge]) -> bool {
        ctx.pairs.iter().zip(ctx.covering).all(|(&q, cov)| {
            cur.iter().any(|e| q.is_subset(*e))
                || cov
                    .iter()
                    .any(|&i| i >= idx && !completes_forbidden(cur, ctx.cand[i], ctx.p))
        })
    }
    fn rec(ctx: &Ctx<'_>, idx: usize, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if !feasible(ctx, idx, cur) {
            return;
        }
        if idx == ctx.cand.len() {
            out.push(cur.clone());
            return;
        }
        let e = ctx.cand[idx];
        if !completes_forbidden(cur, e, ctx.p) {
            cur.push(e);
            rec(ctx, idx + 1, cur, out);
            cur.pop();
        }
        rec(ctx, idx + 1, cur, out);
    }
    let ctx = Ctx {
        cand: &cand,
        pairs: &pairs,
        covering: &covering,
        p,
    };
    rec(&ctx, 0, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|es| RGraph::from_edges(n, r, es))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_covered_t_free_triple_systems() {
        let p = TrianglePattern::t_family(3).unwrap();
        for n in 3..=6 {
            let all = two_covered_free_graphs(n, 3, &p).unwrap();
            assert_eq!(all.len(), usize::from(n == 3), "n = {n}");
        }
        let seven = two_covered_free_graphs(7, 3, &p).unwrap();
        // 7!/168 labelled Fano planes.
        assert_eq!(seven.len(), 30);
        assert!(seven
            .iter()
            .all(|g| is_isomorphic(g, &crate::steiner::fano()).is_some()));
    }

    #[test]
    fn turan_examples() {
        assert_eq!(gen_turan(6, 3).unwrap().len(), 8);
        assert_eq!(gen_turan(5, 2).unwrap().len(), 6);
        assert_eq!(gen_turan(7, 3).unwrap().len(), 12);
        for r in 2..=5 {
            assert_eq!(gen_turan(r, r).unwrap(), RGraph::single_edge(r).unwrap());
        }
        assert!(gen_turan(2, 3).is_err());
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
    }

    #[test]
    fn mantel_small() {
        let p = TrianglePattern::delta(2).unwrap();
        for n in 3..=6 {
            let rep = ex_search(n, 2, &p, &SearchConfig::default()).unwrap();
            assert_eq!(rep.max_edges, n * n / 4);
            assert_eq!(rep.witnesses.len(), 1);
            assert!(is_isomorphic(&rep.witnesses[0], &gen_turan(n, 2).unwrap()).is_some());
        }
    }

    #[test]
    fn guard_and_incomplete() {
        let p = TrianglePattern::t_family(3).unwrap();
        assert!(matches!(
            ex_search(7, 3, &p, &SearchConfig::default()),
            Err(Error::ScaleGuard(_))
        ));
        let cfg = SearchConfig {
            incomplete: true,
            ..Default::default()
        };
        let rep = ex_search(7, 3, &p, &cfg).unwrap();
        assert!(!rep.complete);
        assert!(rep.max_edges >= 12);
    }

    #[test]
    fn free_graph_count_for_triangles_on_four_vertices() {
        // Triangle-free labelled graphs on 4 vertices, counted by brute force.
        let p = TrianglePattern::delta(2).unwrap();
        let mut brute = 0;
        let all = all_r_subsets(4, 2);
        for mask in 0u32..(1 << all.len()) {
            let es: Vec<Edge> = (0..all.len())
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| all[b])
                .collect();
            let g = RGraph::from_edges(4, 2, es).unwrap();
            if crate::families::is_free(&g, &p).unwrap().free {
                brute += 1;
            }
        }
        let visited = for_each_free_graph(4, 2, &p, |_| {}).unwrap();
        assert_eq!(visited, brute);
    }
}
