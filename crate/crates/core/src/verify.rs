//! The acceptance battery. Each criterion runs independently and reports a
//! pass/fail outcome with a one-line detail.

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entropy::{
    alpha_superadditivity, alphas, build_distribution, entropy_gap, optimal_entropy_identity,
};
use crate::error::Result;
use crate::extremal::{
    crossing_link_construction, degree_stability_check, degree_threshold,
    doubled_part_link_construction, ex_search, for_each_free_graph, gen_turan, turan_part_sizes,
    two_covered_free_graphs, vertex_extendability_check, Extendability, SearchConfig,
};
use crate::families::{is_free, is_t_free_via_hom, single_t_triple, TrianglePattern};
use crate::graph::{all_r_subsets, Edge, RGraph};
use crate::lagrangian::{
    ascent_restarts, eval_poly, grad_poly, maximize, stationary_points,
    superadditive_product_bound_exact, MaximizeConfig, SimplexVector,
};
use crate::morph::is_isomorphic;
use crate::numeric::factorial;
use crate::parallel::par_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Uniformities 2 and 3.
    Quick,
    /// Adds uniformity 4 where feasible.
    Paper,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<28} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn outcome(
    id: u8,
    name: &'static str,
    start: Instant,
    res: Result<(bool, String)>,
) -> CriterionOutcome {
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "mantel"),
    (2, "bollobas"),
    (3, "t-family edge bound"),
    (4, "lagrangian value"),
    (5, "optimal solution structure"),
    (6, "entropy identity"),
    (7, "alpha vector"),
    (8, "superadditive product sweep"),
    (9, "hom oracle equivalence"),
    (10, "gradient check"),
    (11, "stability harnesses"),
];

pub fn run_criterion(id: u8, suite: Suite) -> CriterionOutcome {
    let start = Instant::now();
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, n)| n);
    let res = match id {
        1 => mantel(),
        2 => bollobas(),
        3 => t_edge_bound(),
        4 => lagrangian_value(suite),
        5 => opt_structure(suite),
        6 => entropy_identity(suite),
        7 => alpha_vector(suite),
        8 => product_sweep(suite),
        9 => hom_oracle(suite),
        10 => gradient_check(),
        11 => stability_harnesses(suite),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    outcome(id, name, start, res)
}

pub fn run_suite(suite: Suite) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|(id, _)| run_criterion(*id, suite))
        .collect()
}

fn mantel() -> Result<(bool, String)> {
    let start = Instant::now();
    let p = TrianglePattern::delta(2)?;
    let mut ok = true;
    let mut values = Vec::new();
    for n in 3..=7 {
        let rep = ex_search(n, 2, &p, &SearchConfig::default())?;
        let unique = rep.witnesses.len() == 1
            && is_isomorphic(&rep.witnesses[0], &gen_turan(n, 2)?).is_some();
        ok &= rep.max_edges == n * n / 4 && unique;
        values.push(format!("ex({n})={}", rep.max_edges));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    Ok((
        ok,
        format!(
            "{} unique T2(n) witnesses, {secs:.2}s < 60s",
            values.join(" ")
        ),
    ))
}

fn bollobas() -> Result<(bool, String)> {
    let start = Instant::now();
    let rep = ex_search(
        6,
        3,
        &TrianglePattern::c_family(3)?,
        &SearchConfig::default(),
    )?;
    let iso =
        rep.witnesses.len() == 1 && is_isomorphic(&rep.witnesses[0], &gen_turan(6, 3)?).is_some();
    let secs = start.elapsed().as_secs_f64();
    Ok((
        rep.max_edges == 8 && iso && secs < 600.0,
        format!(
            "ex(6, C3) = {}, {} witness class(es), T3(6) only: {iso}, {} nodes",
            rep.max_edges,
            rep.witnesses.len(),
            rep.nodes_explored
        ),
    ))
}

fn t_edge_bound() -> Result<(bool, String)> {
    let p = TrianglePattern::t_family(3)?;
    let turan = gen_turan(6, 3)?;
    let mut max = 0;
    let mut equality = Vec::new();
    let visited = for_each_free_graph(6, 3, &p, |es| {
        max = max.max(es.len());
        if es.len() == 8 {
            equality.push(es.to_vec());
        }
    })?;
    let mut eq_ok = true;
    for es in &equality {
        let g = RGraph::from_edges(6, 3, es.clone())?;
        eq_ok &= is_isomorphic(&g, &turan).is_some();
    }
    Ok((
        max <= 8 && eq_ok,
        format!(
            "{visited} free graphs visited, max {max} edges, {} equality graphs all T3(6): {eq_ok}",
            equality.len()
        ),
    ))
}

/// Single edges of uniformity 2..=5 and every 2-covered 𝒯_3-free 3-graph on
/// at most 7 vertices (up to isomorphism).
pub fn lagrangian_corpus(suite: Suite) -> Result<Vec<RGraph>> {
    let mut corpus: Vec<RGraph> = (2..=5).map(RGraph::single_edge).collect::<Result<_>>()?;
    let p = TrianglePattern::t_family(3)?;
    for n in 3..=7 {
        corpus.extend(crate::extremal::dedup_isomorphic(two_covered_free_graphs(
            n, 3, &p,
        )?));
    }
    if suite == Suite::Paper {
        let p4 = TrianglePattern::t_family(4)?;
        for n in 5..=7 {
            corpus.extend(crate::extremal::dedup_isomorphic(two_covered_free_graphs(
                n, 4, &p4,
            )?));
        }
    }
    let mut unique: Vec<RGraph> = Vec::new();
    for g in corpus {
        if !unique
            .iter()
            .any(|h| h.r() == g.r() && h.n() == g.n() && is_isomorphic(h, &g).is_some())
        {
            unique.push(g);
        }
    }
    Ok(unique)
}

fn describe(g: &RGraph) -> String {
    format!("(r={}, n={}, |E|={})", g.r(), g.n(), g.len())
}

fn lagrangian_value(suite: Suite) -> Result<(bool, String)> {
    let corpus = lagrangian_corpus(suite)?;
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for g in &corpus {
        let t_free = is_free(g, &TrianglePattern::t_family(g.r())?)?.free;
        let res = maximize(g, &MaximizeConfig::default())?;
        let target = (g.r() as f64).powi(-(g.r() as i32));
        let err = (res.value - target).abs();
        worst = worst.max(err);
        ok &= t_free && g.is_2_covered() && res.certified && err <= 1e-9;
    }
    let names: Vec<String> = corpus.iter().map(describe).collect();
    Ok((
        ok,
        format!(
            "{} instances {}, max |value - r^-r| = {worst:.2e}",
            corpus.len(),
            names.join(" ")
        ),
    ))
}

fn on_edge_uniform(g: &RGraph, x: &SimplexVector, tol: f64) -> bool {
    let support = x.support();
    let r = g.r();
    support.len() == r
        && g.contains_edge(Edge::from_vertices(support.iter().copied()))
        && support
            .iter()
            .all(|&v| (x.weight(v) - 1.0 / r as f64).abs() <= tol)
}

fn opt_structure(suite: Suite) -> Result<(bool, String)> {
    let corpus = lagrangian_corpus(suite)?;
    let mut ok = true;
    let mut maximizers = 0usize;
    let mut restart_hits = 0usize;
    for g in &corpus {
        let lambda = (g.r() as f64).powi(-(g.r() as i32));
        let scan = stationary_points(g)?;
        ok &= scan.unresolved.is_empty();
        for c in scan.candidates.iter().filter(|c| c.value >= lambda - 1e-9) {
            maximizers += 1;
            ok &= on_edge_uniform(g, &c.x, 1e-7);
        }
        let mut hits = 0;
        for l in ascent_restarts(g, 64, 5000, 0x5eed) {
            if l.value >= lambda - 1e-9 {
                hits += 1;
                maximizers += 1;
                // Polished points can carry weights below the support cutoff.
                let cleaned = SimplexVector::normalized(
                    l.x.as_slice()
                        .iter()
                        .map(|&w| if w > 1e-9 { w } else { 0.0 })
                        .collect(),
                )?;
                ok &= on_edge_uniform(g, &cleaned, 1e-7);
            }
        }
        ok &= hits > 0;
        restart_hits += hits;
    }
    Ok((
        ok,
        format!(
            "{} instances, 64 restarts each, {maximizers} maximizers ({restart_hits} from restarts) all uniform on an edge",
            corpus.len()
        ),
    ))
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize, zero_prob: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n)
        .map(|_| {
            if rng.random::<f64>() < zero_prob {
                0.0
            } else {
                -(1.0 - rng.random::<f64>()).ln()
            }
        })
        .collect();
    let s: f64 = raw.iter().sum();
    if s == 0.0 {
        return vec![1.0 / n as f64; n];
    }
    raw.into_iter().map(|v| v / s).collect()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, r: usize, density: f64) -> Result<RGraph> {
    let edges: Vec<Edge> = all_r_subsets(n, r)
        .into_iter()
        .filter(|_| rng.random::<f64>() < density)
        .collect();
    RGraph::from_edges(n, r, edges)
}

/// Random `(H, x)` pairs with `β > 0`, reproducible from `seed`.
pub fn random_instances(
    count: usize,
    seed: u64,
    max_r: usize,
) -> Result<Vec<(RGraph, SimplexVector)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.random_range(2..=max_r);
        let n = rng.random_range(r..=r + 5);
        let density = rng.random_range(0.2..0.9);
        let g = random_graph(&mut rng, n, r, density)?;
        let x = SimplexVector::normalized(random_simplex(&mut rng, n, 0.15))?;
        if eval_poly(&g, x.as_slice()) > 0.0 {
            out.push((g, x));
        }
    }
    Ok(out)
}

fn entropy_identity(suite: Suite) -> Result<(bool, String)> {
    let max_r = if suite == Suite::Paper { 4 } else { 3 };
    let mut worst_gap: f64 = 0.0;
    let mut checks = 0;
    for (g, x) in random_instances(100, 0xe17, max_r)? {
        let d = build_distribution(&g, &x)?;
        for j in 1..=g.r() {
            worst_gap = worst_gap.max(entropy_gap(&d, j)?.residual);
            checks += 1;
        }
    }
    let mut worst_opt: f64 = 0.0;
    let mut optima = lagrangian_corpus(suite)?;
    optima.push(RGraph::complete(4, 2)?);
    for g in &optima {
        worst_opt =
            worst_opt.max(optimal_entropy_identity(g, &MaximizeConfig::default())?.residual);
    }
    Ok((
        worst_gap <= 1e-9 && worst_opt <= 1e-8,
        format!(
            "100 instances / {checks} prefix checks: max residual {worst_gap:.2e} <= 1e-9; {} certified optima: max residual {worst_opt:.2e} <= 1e-8",
            optima.len()
        ),
    ))
}

fn alpha_vector(suite: Suite) -> Result<(bool, String)> {
    let corpus = lagrangian_corpus(suite)?;
    let mut worst: f64 = 0.0;
    let mut superadditive = true;
    let mut certified = true;
    for g in &corpus {
        let res = maximize(g, &MaximizeConfig::default())?;
        certified &= res.certified;
        let d = build_distribution(g, &res.maximizer)?;
        let a = alphas(&d)?;
        let r = g.r() as f64;
        for (i, ai) in a.iter().enumerate() {
            worst = worst.max((ai - (i + 1) as f64 / r).abs());
        }
        superadditive &= alpha_superadditivity(&a).ok;
    }
    Ok((
        certified && worst <= 1e-6 && superadditive,
        format!(
            "{} certified optima: max |alpha_i - i/r| = {worst:.2e} <= 1e-6, superadditive: {superadditive}",
            corpus.len()
        ),
    ))
}

/// Every nondecreasing grid vector `k_1 ≤ … ≤ k_{r−1} ≤ k_r = steps` (in units
/// of `1/steps`) satisfying superadditivity, checked in integer arithmetic.
fn grid_sweep(r: usize, steps: u128) -> (u64, u64, bool) {
    let mut hyp = 0u64;
    let mut violations = 0u64;
    let mut max_hit = false;
    let mut ks = vec![0u128; r];
    ks[r - 1] = steps;
    fn rec(
        pos: usize,
        r: usize,
        steps: u128,
        ks: &mut Vec<u128>,
        hyp: &mut u64,
        violations: &mut u64,
        max_hit: &mut bool,
    ) {
        if pos == r - 1 {
            let superadditive =
                (1..=r).all(|i| (i..=r - i).all(|j| ks[i - 1] + ks[j - 1] <= ks[i + j - 1]));
            if !superadditive {
                return;
            }
            *hyp += 1;
            // Π (k_i/steps) ≤ r!/r^r  ⇔  Π k_i · r^r ≤ r! · steps^r
            let prod: u128 = ks.iter().product();
            let lhs = prod * (r as u128).pow(r as u32);
            let rhs = factorial(r) * steps.pow(r as u32);
            if lhs > rhs {
                *violations += 1;
            }
            if lhs == rhs {
                *max_hit = true;
            }
            return;
        }
        let lo = if pos == 0 { 0 } else { ks[pos - 1] };
        for k in lo..=steps {
            ks[pos] = k;
            rec(pos + 1, r, steps, ks, hyp, violations, max_hit);
        }
    }
    rec(
        0,
        r,
        steps,
        &mut ks,
        &mut hyp,
        &mut violations,
        &mut max_hit,
    );
    (hyp, violations, max_hit)
}

fn product_sweep(suite: Suite) -> Result<(bool, String)> {
    let rs: &[usize] = if suite == Suite::Paper { &[3, 4] } else { &[3] };
    let mut ok = true;
    let mut parts = Vec::new();
    for &r in rs {
        let (hyp, violations, _) = grid_sweep(r, 20);
        let eq: Vec<Ratio<i64>> = (1..=r as i64).map(|i| Ratio::new(i, r as i64)).collect();
        let exact = superadditive_product_bound_exact(&eq);
        let attains = exact.hypothesis_holds && exact.equality_case && exact.product == exact.bound;
        ok &= violations == 0 && attains && hyp > 0;
        parts.push(format!(
            "r={r}: {hyp} grid points in hypothesis, {violations} violations, i/r attains {} exactly: {attains}",
            exact.bound
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn hom_oracle(suite: Suite) -> Result<(bool, String)> {
    let max_n = if suite == Suite::Paper { 6 } else { 5 };
    let p = TrianglePattern::t_family(3)?;
    let mut total = 0u64;
    let mut disagreements = 0u64;
    for n in 3..=max_n {
        let cand = all_r_subsets(n, 3);
        let m = cand.len();
        let chunks: Vec<(u64, u64)> = (0..(1u64 << m))
            .step_by(1 << 12)
            .map(|lo| (lo, (lo + (1 << 12)).min(1u64 << m)))
            .collect();
        let counts = par_map(chunks, |(lo, hi)| -> Result<u64> {
            let mut bad = 0;
            for mask in lo..hi {
                let es: Vec<Edge> = (0..m)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| cand[b])
                    .collect();
                let g = RGraph::from_edges(n, 3, es)?;
                if is_free(&g, &p)?.free != is_t_free_via_hom(&g)? {
                    bad += 1;
                }
            }
            Ok(bad)
        });
        for c in counts {
            disagreements += c?;
        }
        total += 1u64 << m;
    }
    Ok((
        disagreements == 0,
        format!("{total} labelled 3-graphs on n <= {max_n}, {disagreements} disagreements"),
    ))
}

fn gradient_check() -> Result<(bool, String)> {
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    let mut euler: f64 = 0.0;
    for (g, x) in random_instances(100, 0x9d, 5)? {
        let xs = x.as_slice();
        let grad = grad_poly(&g, xs);
        for j in 0..xs.len() {
            let mut plus = xs.to_vec();
            let mut minus = xs.to_vec();
            plus[j] += h;
            minus[j] -= h;
            let fd = (eval_poly(&g, &plus) - eval_poly(&g, &minus)) / (2.0 * h);
            worst = worst.max((fd - grad[j]).abs());
        }
        let dot: f64 = xs.iter().zip(&grad).map(|(a, b)| a * b).sum();
        euler = euler.max((dot - g.r() as f64 * eval_poly(&g, xs)).abs());
    }
    Ok((
        worst <= 1e-6 && euler <= 1e-10,
        format!("100 instances: max |fd - grad| = {worst:.2e} <= 1e-6, Euler residual {euler:.2e}"),
    ))
}

fn stability_harnesses(suite: Suite) -> Result<(bool, String)> {
    let eps = 0.1;
    let max_r = if suite == Suite::Paper { 4 } else { 3 };
    let mut correct = 0usize;
    let mut total = 0usize;
    let mut tally = |ok: bool| {
        total += 1;
        correct += usize::from(ok);
    };
    for r in 2..=max_r {
        for n in r..=(2 * r + 2) {
            let t = gen_turan(n, r)?;
            // Minimum degree sits in a largest part: the product of the other part sizes.
            let mut sizes = turan_part_sizes(n, r);
            sizes.sort_unstable();
            let min_degree: usize = sizes[..r - 1].iter().product();
            let dense = min_degree as f64 >= degree_threshold(n, r, eps);
            let d = degree_stability_check(&t, eps)?;
            tally(d.delta_free && d.degree_ok == dense && d.partite && d.implication_holds);
            for v in 1..=n {
                let x = vertex_extendability_check(&t, v, eps)?;
                tally(if dense {
                    matches!(x.verdict, Extendability::Extends { .. })
                } else {
                    matches!(
                        x.verdict,
                        Extendability::NotApplicable { witness: None, .. }
                    )
                });
            }
        }
        for m in (2 * r)..=(2 * r + 2) {
            let mut built = vec![crossing_link_construction(m, r)?];
            if r >= 3 {
                built.push(doubled_part_link_construction(m, r)?);
            }
            for h in built {
                let star = m + 1;
                let x = vertex_extendability_check(&h, star, eps)?;
                let located = match x.verdict {
                    Extendability::NotApplicable {
                        witness: Some([a, b, c]),
                        ..
                    } => single_t_triple(a, b, c, 1),
                    _ => false,
                };
                tally(located && x.remainder_partite && !x.partite);
                let d = degree_stability_check(&h, eps)?;
                tally(!d.delta_free && d.implication_holds);
            }
        }
    }
    Ok((
        correct == total,
        format!("{correct}/{total} corpus instances classified as expected"),
    ))
}
