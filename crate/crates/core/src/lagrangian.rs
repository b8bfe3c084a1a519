//! The Lagrangian polynomial `P_H(x) = Σ_{e∈H} Π_{i∈e} x_i` and its maximum
//! over the probability simplex.
//!
//! Exact mode enumerates candidate supports and solves the first-order system
//! `∂_j P = μ (j ∈ S), Σ x = 1` on each by damped Newton. Only supports whose
//! induced subgraph is 2-covered are solved: if two support vertices share no
//! edge, `P` is affine along the direction moving mass between them, so some
//! maximizer lives on a smaller support. Heuristic mode runs projected gradient
//! ascent from random starting points and polishes the result with Newton on
//! the support it settles on.

use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{is_free, TrianglePattern};
use crate::graph::{binomial, Edge, RGraph, Vertex};
use crate::numeric::{compensated_sum, factorial, CompensatedSum};
use crate::parallel::par_map;

/// Largest vertex count accepted by exact mode.
pub const EXACT_MAX_VERTICES: usize = 14;
pub const NEWTON_MAX_ITER: usize = 200;
pub const NEWTON_DAMPING: f64 = 0.5;
const NEWTON_TOL: f64 = 1e-14;
const SUPPORT_EPS: f64 = 1e-10;
const NEWTON_STARTS: usize = 6;
const FACE_ASCENT_ITERS: usize = 300;

/// A point of the probability simplex; `x[v - 1]` is the weight of vertex `v`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SimplexVector {
    x: Vec<f64>,
}

impl SimplexVector {
    pub const DEFAULT_TOL: f64 = 1e-12;

    pub fn new(x: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(x, Self::DEFAULT_TOL)
    }

    pub fn with_tolerance(x: Vec<f64>, tau: f64) -> Result<Self> {
        if let Some(bad) = x.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "entry {bad} is negative or not finite"
            )));
        }
        let sum = compensated_sum(x.iter().copied());
        if (sum - 1.0).abs() > tau {
            return Err(Error::InvalidWeights(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(SimplexVector { x })
    }

    /// Scales a nonnegative vector with positive sum onto the simplex.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if let Some(bad) = raw.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "entry {bad} is negative or not finite"
            )));
        }
        let sum = compensated_sum(raw.iter().copied());
        if sum <= 0.0 {
            return Err(Error::InvalidWeights("entries sum to zero".into()));
        }
        Ok(SimplexVector {
            x: raw.into_iter().map(|v| v / sum).collect(),
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_on(n, &(1..=n).collect::<Vec<_>>())
    }

    /// Weight `1/|support|` on each listed vertex, zero elsewhere.
    pub fn uniform_on(n: usize, support: &[Vertex]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidWeights("empty support".into()));
        }
        let mut x = vec![0.0; n];
        for &v in support {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            x[v - 1] = 1.0 / support.len() as f64;
        }
        Self::new(x)
    }

    pub fn indicator(n: usize, v: Vertex) -> Result<Self> {
        Self::uniform_on(n, &[v])
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.x
    }

    pub fn weight(&self, v: Vertex) -> f64 {
        self.x[v - 1]
    }

    /// Vertices with strictly positive weight.
    pub fn support(&self) -> Vec<Vertex> {
        self.x
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    // Projection and Newton output are already on the simplex up to rounding.
    fn from_raw_unchecked(x: Vec<f64>) -> Self {
        SimplexVector { x }
    }
}

fn check_dim(h: &RGraph, x: &SimplexVector) -> Result<()> {
    if x.dim() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: x.dim(),
        });
    }
    Ok(())
}

#[inline]
fn edge_product(e: Edge, x: &[f64]) -> f64 {
    e.vertices().map(|v| x[v - 1]).product()
}

/// `P_H` at an arbitrary (not necessarily normalized) point.
pub fn eval_poly(h: &RGraph, x: &[f64]) -> f64 {
    compensated_sum(h.edges().iter().map(|&e| edge_product(e, x)))
}

/// `∇P_H` at an arbitrary point.
pub fn grad_poly(h: &RGraph, x: &[f64]) -> Vec<f64> {
    let mut acc = vec![CompensatedSum::new(); h.n()];
    for &e in h.edges() {
        for j in e.vertices() {
            acc[j - 1].add(edge_product(e.without(j), x));
        }
    }
    acc.iter().map(|a| a.value()).collect()
}

/// Hessian of `P_H` at an arbitrary point.
pub fn hessian_poly(h: &RGraph, x: &[f64]) -> DMatrix<f64> {
    let n = h.n();
    let mut m = DMatrix::zeros(n, n);
    for &e in h.edges() {
        for j in e.vertices() {
            for l in e.vertices() {
                if j != l {
                    m[(j - 1, l - 1)] += edge_product(e.without(j).without(l), x);
                }
            }
        }
    }
    m
}

pub fn eval_p(h: &RGraph, x: &SimplexVector) -> Result<f64> {
    check_dim(h, x)?;
    Ok(eval_poly(h, x.as_slice()))
}

pub fn grad_p(h: &RGraph, x: &SimplexVector) -> Result<Vec<f64>> {
    check_dim(h, x)?;
    Ok(grad_poly(h, x.as_slice()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximizeConfig {
    pub mode: Mode,
    /// Random restarts of projected gradient ascent. In exact mode they cross-check
    /// the support enumeration.
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for MaximizeConfig {
    fn default() -> Self {
        MaximizeConfig {
            mode: Mode::Exact,
            restarts: 16,
            max_iter: 5000,
            tol: 1e-9,
            seed: 0x5eed,
        }
    }
}

impl MaximizeConfig {
    pub fn heuristic(restarts: usize) -> Self {
        MaximizeConfig {
            mode: Mode::Heuristic,
            restarts,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptResult {
    pub value: f64,
    pub maximizer: SimplexVector,
    /// Support of the maximizer; empty for an edgeless graph.
    pub support: Vec<Vertex>,
    pub kkt_residual: f64,
    /// `min (r·value − ∂_j P)` over vertices outside the support; `None` when the support is full.
    pub off_support_slack: Option<f64>,
    pub certified: bool,
    pub restarts_used: usize,
    pub supports_examined: usize,
    /// The value as a fraction when the maximizer is uniform on its support.
    #[serde(serialize_with = "ser_ratio")]
    pub exact_value: Option<Ratio<u64>>,
    pub note: Option<String>,
}

fn ser_ratio<S: serde::Serializer>(
    v: &Option<Ratio<u64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// A stationary point found on the relative interior of one support.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub support: Vec<Vertex>,
    pub x: SimplexVector,
    pub value: f64,
}

/// Output of the support enumeration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportScan {
    pub candidates: Vec<Candidate>,
    /// Supports where Newton neither converged nor left the feasible region.
    pub unresolved: Vec<Vec<Vertex>>,
    pub supports_examined: usize,
}

enum NewtonOutcome {
    Converged(Vec<f64>),
    Failed,
}

/// Solves `∇P_G(y) = μ·1, Σy = 1` for the graph `g` (already restricted to the
/// support) from the starting point `y0`.
fn newton_stationary(g: &RGraph, y0: &[f64]) -> NewtonOutcome {
    let k = g.n();
    let residual = |y: &[f64], mu: f64| -> DVector<f64> {
        let gr = grad_poly(g, y);
        let mut f = DVector::zeros(k + 1);
        for j in 0..k {
            f[j] = gr[j] - mu;
        }
        f[k] = compensated_sum(y.iter().copied()) - 1.0;
        f
    };
    let mut y = y0.to_vec();
    let mut mu = g.r() as f64 * eval_poly(g, &y);
    let mut f = residual(&y, mu);
    for _ in 0..NEWTON_MAX_ITER {
        let norm = f.amax();
        if norm <= NEWTON_TOL {
            return NewtonOutcome::Converged(y);
        }
        let hess = hessian_poly(g, &y);
        let mut jac = DMatrix::zeros(k + 1, k + 1);
        for a in 0..k {
            for b in 0..k {
                jac[(a, b)] = hess[(a, b)];
            }
            jac[(a, k)] = -1.0;
            jac[(k, a)] = 1.0;
        }
        let svd = jac.svd(true, true);
        let step = match svd.solve(&(-&f), 1e-13) {
            Ok(s) => s,
            Err(_) => return NewtonOutcome::Failed,
        };
        let mut t: f64 = 1.0;
        let mut accepted = false;
        while t > 1e-12 {
            let cand: Vec<f64> = (0..k).map(|j| y[j] + t * step[j]).collect();
            let cmu = mu + t * step[k];
            let cf = residual(&cand, cmu);
            if cf.norm() < f.norm() {
                y = cand;
                mu = cmu;
                f = cf;
                accepted = true;
                break;
            }
            t *= NEWTON_DAMPING;
        }
        if !accepted {
            // No descent direction left: converged to rounding level or stuck.
            return if f.amax() <= 1e3 * NEWTON_TOL {
                NewtonOutcome::Converged(y)
            } else {
                NewtonOutcome::Failed
            };
        }
    }
    if f.amax() <= 1e3 * NEWTON_TOL {
        NewtonOutcome::Converged(y)
    } else {
        NewtonOutcome::Failed
    }
}

fn mask_vertices(mask: u32) -> Vec<Vertex> {
    (0..32)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| b + 1)
        .collect()
}

/// Whether the subgraph induced on `s` covers every pair of `s`.
fn support_is_2_covered(h: &RGraph, s: Edge) -> bool {
    let mut covered = Edge::EMPTY;
    let mut pair_cover = vec![Edge::EMPTY; h.n() + 1];
    for e in h.edges_within(s) {
        covered = covered.union(e);
        for v in e.vertices() {
            pair_cover[v] = pair_cover[v].union(e);
        }
    }
    covered == s && s.vertices().all(|v| pair_cover[v] == s)
}

fn solve_support(h: &RGraph, verts: &[Vertex]) -> std::result::Result<Option<Candidate>, ()> {
    let g = h.induced(verts).expect("support vertices are in range");
    let k = verts.len();
    let mask = verts.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
    let mut rng = ChaCha8Rng::seed_from_u64(mask);
    let mut converged = false;
    let mut best: Option<Candidate> = None;
    for attempt in 0..NEWTON_STARTS {
        let start = if attempt == 0 {
            vec![1.0 / k as f64; k]
        } else {
            exp_weights(&mut rng, k)
        };
        // Random starts first climb within the face so that Newton lands on
        // an interior maximum rather than a stationary point off the simplex.
        let start = if attempt == 0 {
            start
        } else {
            let top = ascend(&g, start, FACE_ASCENT_ITERS);
            if top.iter().any(|&v| v <= SUPPORT_EPS) {
                converged = true;
                continue;
            }
            top
        };
        let y = match newton_stationary(&g, &start) {
            NewtonOutcome::Converged(y) => y,
            NewtonOutcome::Failed => continue,
        };
        converged = true;
        if y.iter().any(|&v| v <= SUPPORT_EPS) {
            continue;
        }
        let mut x = vec![0.0; h.n()];
        let s: f64 = y.iter().sum();
        for (j, &v) in verts.iter().enumerate() {
            x[v - 1] = y[j] / s;
        }
        let value = eval_poly(h, &x);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(Candidate {
                support: verts.to_vec(),
                x: SimplexVector::from_raw_unchecked(x),
                value,
            });
        }
    }
    if converged {
        Ok(best)
    } else {
        Err(())
    }
}

fn exp_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Enumerates every support whose induced subgraph is 2-covered and solves the
/// first-order system on it.
pub fn stationary_points(h: &RGraph) -> Result<SupportScan> {
    let n = h.n();
    if n > EXACT_MAX_VERTICES {
        return Err(Error::ScaleGuard(format!(
            "exact Lagrangian maximization supports at most {EXACT_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let masks: Vec<u32> = (1u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize >= h.r())
        .filter(|&m| support_is_2_covered(h, Edge::from_mask(m as u64)))
        .collect();
    let examined = masks.len();
    let solved = par_map(masks, |m| {
        let verts = mask_vertices(m);
        (verts.clone(), solve_support(h, &verts))
    });
    let mut candidates = Vec::new();
    let mut unresolved = Vec::new();
    for (verts, out) in solved {
        match out {
            Ok(Some(c)) => candidates.push(c),
            Ok(None) => {}
            Err(()) => unresolved.push(verts),
        }
    }
    Ok(SupportScan {
        candidates,
        unresolved,
        supports_examined: examined,
    })
}

/// Euclidean projection onto the probability simplex.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        css += ui;
        let t = (css - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    let mut out: Vec<f64> = v.iter().map(|&vi| (vi - theta).max(0.0)).collect();
    let s: f64 = compensated_sum(out.iter().copied());
    if s > 0.0 {
        for o in &mut out {
            *o /= s;
        }
    }
    out
}

/// Projected gradient ascent with Armijo backtracking.
fn ascend(h: &RGraph, x0: Vec<f64>, max_iter: usize) -> Vec<f64> {
    let mut x = x0;
    let mut fx = eval_poly(h, &x);
    let mut t: f64 = 1.0;
    for _ in 0..max_iter {
        let g = grad_poly(h, &x);
        let mut moved = false;
        let mut step = (t * 4.0).min(1e6);
        while step > 1e-14 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + step * b).collect();
            let y = project_to_simplex(&trial);
            let fy = eval_poly(h, &y);
            let lin: f64 = g
                .iter()
                .zip(y.iter().zip(&x))
                .map(|(gi, (yi, xi))| gi * (yi - xi))
                .sum();
            if fy >= fx + 1e-4 * lin && fy >= fx {
                let change = y
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                x = y;
                let gain = fy - fx;
                fx = fy;
                t = step;
                moved = change > 1e-15 && gain >= 0.0;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    x
}

/// Newton polish on the support the point has settled on.
fn polish(h: &RGraph, x: Vec<f64>) -> Vec<f64> {
    let verts: Vec<Vertex> = (1..=h.n()).filter(|&v| x[v - 1] > SUPPORT_EPS).collect();
    if verts.is_empty() {
        return x;
    }
    let g = h.induced(&verts).expect("in range");
    let s: f64 = verts.iter().map(|&v| x[v - 1]).sum();
    let y0: Vec<f64> = verts.iter().map(|&v| x[v - 1] / s).collect();
    let base = eval_poly(h, &x);
    if let NewtonOutcome::Converged(y) = newton_stationary(&g, &y0) {
        if y.iter().all(|&v| v > 0.0) {
            let mut z = vec![0.0; h.n()];
            let sy: f64 = y.iter().sum();
            for (j, &v) in verts.iter().enumerate() {
                z[v - 1] = y[j] / sy;
            }
            if eval_poly(h, &z) >= base - 1e-15 {
                return z;
            }
        }
    }
    let mut z = vec![0.0; h.n()];
    for &v in &verts {
        z[v - 1] = x[v - 1] / s;
    }
    z
}

/// A local maximum reached by one ascent run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalOptimum {
    pub start: usize,
    pub x: SimplexVector,
    pub value: f64,
    pub support: Vec<Vertex>,
}

/// Runs `restarts` ascents: the first from the barycenter, the rest from
/// uniformly random simplex points seeded by `seed + k`.
pub fn ascent_restarts(
    h: &RGraph,
    restarts: usize,
    max_iter: usize,
    seed: u64,
) -> Vec<LocalOptimum> {
    let n = h.n();
    par_map((0..restarts).collect(), |k| {
        let x0 = if k == 0 {
            vec![1.0 / n as f64; n]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            exp_weights(&mut rng, n)
        };
        let x = polish(h, ascend(h, x0, max_iter));
        let value = eval_poly(h, &x);
        let x = SimplexVector::from_raw_unchecked(x);
        LocalOptimum {
            start: k,
            support: x.support(),
            value,
            x,
        }
    })
}

fn lex_less(a: &[Vertex], b: &[Vertex]) -> bool {
    a < b
}

fn pick_best<'a, I>(items: I) -> Option<(&'a [Vertex], &'a SimplexVector, f64)>
where
    I: IntoIterator<Item = (&'a [Vertex], &'a SimplexVector, f64)>,
{
    let mut best: Option<(&[Vertex], &SimplexVector, f64)> = None;
    for (s, x, v) in items {
        best = match best {
            None => Some((s, x, v)),
            Some((bs, bx, bv)) => {
                if v > bv + 1e-12 || ((v - bv).abs() <= 1e-12 && lex_less(s, bs)) {
                    Some((s, x, v))
                } else {
                    Some((bs, bx, bv))
                }
            }
        };
    }
    best
}

fn uniform_fraction(h: &RGraph, x: &SimplexVector, support: &[Vertex]) -> Option<Ratio<u64>> {
    let k = support.len();
    if k == 0 {
        return Some(Ratio::from_integer(0));
    }
    let w = 1.0 / k as f64;
    if support.iter().any(|&v| (x.weight(v) - w).abs() > 1e-12) {
        return None;
    }
    let mask = Edge::from_vertices(support.iter().copied());
    let inside = h.edges_within(mask).count() as u64;
    let den = (k as u64).checked_pow(h.r() as u32)?;
    Some(Ratio::new(inside, den))
}

/// Maximizes `P_H` over the simplex.
pub fn maximize(h: &RGraph, cfg: &MaximizeConfig) -> Result<OptResult> {
    let n = h.n();
    if h.is_empty() {
        let maximizer = if n == 0 {
            SimplexVector::from_raw_unchecked(Vec::new())
        } else {
            SimplexVector::uniform(n)?
        };
        return Ok(OptResult {
            value: 0.0,
            maximizer,
            support: Vec::new(),
            kkt_residual: 0.0,
            off_support_slack: None,
            certified: true,
            restarts_used: 0,
            supports_examined: 0,
            exact_value: Some(Ratio::from_integer(0)),
            note: None,
        });
    }
    let locals = if cfg.restarts > 0 {
        ascent_restarts(h, cfg.restarts, cfg.max_iter, cfg.seed)
    } else {
        Vec::new()
    };
    let heuristic_best = pick_best(locals.iter().map(|l| (l.support.as_slice(), &l.x, l.value)));

    let (x, certified, examined, note) = match cfg.mode {
        Mode::Heuristic => {
            let (_, x, _) = heuristic_best.ok_or_else(|| {
                Error::Uncertified("heuristic mode needs at least one restart".into())
            })?;
            (
                x.clone(),
                false,
                0,
                Some("heuristic lower bound".to_string()),
            )
        }
        Mode::Exact => {
            let scan = stationary_points(h)?;
            let exact_best = pick_best(
                scan.candidates
                    .iter()
                    .map(|c| (c.support.as_slice(), &c.x, c.value)),
            );
            let mut note = None;
            let mut certified = scan.unresolved.is_empty();
            if !certified {
                note = Some(format!(
                    "Newton did not resolve {} support(s), e.g. {:?}",
                    scan.unresolved.len(),
                    scan.unresolved[0]
                ));
            }
            let chosen = match (exact_best, heuristic_best) {
                (Some((_, ex, ev)), Some((_, hx, hv))) => {
                    if hv > ev + cfg.tol {
                        certified = false;
                        note = Some(format!(
                            "ascent found {hv} above the enumerated optimum {ev}"
                        ));
                        hx.clone()
                    } else {
                        ex.clone()
                    }
                }
                (Some((_, ex, _)), None) => ex.clone(),
                (None, Some((_, hx, _))) => {
                    certified = false;
                    note = Some("no stationary point found by enumeration".into());
                    hx.clone()
                }
                (None, None) => {
                    return Err(Error::Uncertified(
                        "no stationary point found and no restarts requested".into(),
                    ))
                }
            };
            (chosen, certified, scan.supports_examined, note)
        }
    };
    let value = eval_poly(h, x.as_slice());
    let kkt = kkt_check(h, &x, cfg.tol)?;
    let mut certified = certified;
    let mut note = note;
    if certified && !kkt.passes {
        certified = false;
        note = Some(format!(
            "optimum fails the multiplier check (residual {})",
            kkt.residual
        ));
    }
    let support = x.support();
    Ok(OptResult {
        value,
        exact_value: uniform_fraction(h, &x, &support),
        support,
        maximizer: x,
        kkt_residual: kkt.residual,
        off_support_slack: kkt.off_support_slack,
        certified,
        restarts_used: locals.len(),
        supports_examined: examined,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KktReport {
    /// `max_{j ∈ Supp(x)} |∂_j P − r·P(x)|`.
    pub residual: f64,
    pub off_support_slack: Option<f64>,
    pub passes: bool,
}

/// First-order optimality check: support partials equal `r·P(x)` and no
/// off-support partial exceeds it.
pub fn kkt_check(h: &RGraph, x: &SimplexVector, tol: f64) -> Result<KktReport> {
    check_dim(h, x)?;
    let xs = x.as_slice();
    let target = h.r() as f64 * eval_poly(h, xs);
    let g = grad_poly(h, xs);
    let mut residual: f64 = 0.0;
    let mut slack: Option<f64> = None;
    for (j, &gj) in g.iter().enumerate() {
        if xs[j] > 0.0 {
            residual = residual.max((gj - target).abs());
        } else {
            let s = target - gj;
            slack = Some(slack.map_or(s, |c: f64| c.min(s)));
        }
    }
    let passes = residual <= tol && slack.is_none_or(|s| s >= -tol);
    Ok(KktReport {
        residual,
        off_support_slack: slack,
        passes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OptStructure {
    Pass,
    Fail { reason: String },
    NotApplicable { reason: String },
}

/// For 2-covered 𝒯_r-free graphs: the maximizer is uniform on a single edge
/// and the value is `1/r^r`.
pub fn check_opt_structure(h: &RGraph, res: &OptResult, tol: f64) -> Result<OptStructure> {
    if !h.is_2_covered() {
        return Ok(OptStructure::NotApplicable {
            reason: "graph is not 2-covered".into(),
        });
    }
    let free = is_free(h, &TrianglePattern::t_family(h.r())?)?;
    if !free.free {
        return Ok(OptStructure::NotApplicable {
            reason: format!("graph contains a T-family triple {:?}", free.witness),
        });
    }
    let r = h.r();
    let support = &res.support;
    if support.len() != r {
        return Ok(OptStructure::Fail {
            reason: format!(
                "support {support:?} has size {}, expected {r}",
                support.len()
            ),
        });
    }
    if !h.contains_edge(Edge::from_vertices(support.iter().copied())) {
        return Ok(OptStructure::Fail {
            reason: format!("support {support:?} is not an edge"),
        });
    }
    let w = 1.0 / r as f64;
    let dev = support
        .iter()
        .map(|&v| (res.maximizer.weight(v) - w).abs())
        .fold(0.0, f64::max);
    if dev > tol {
        return Ok(OptStructure::Fail {
            reason: format!("support weights deviate from 1/r by {dev}"),
        });
    }
    let target = (r as f64).powi(-(r as i32));
    if (res.value - target).abs() > tol {
        return Ok(OptStructure::Fail {
            reason: format!("value {} differs from 1/r^r = {target}", res.value),
        });
    }
    Ok(OptStructure::Pass)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductBound<T> {
    pub hypothesis_holds: bool,
    pub product: T,
    pub bound: T,
    pub bound_ok: bool,
    pub equality_case: bool,
}

/// Checks `0 ≤ x_1 ≤ … ≤ x_r = 1`, `x_i + x_j ≤ x_{i+j}`, and if so that
/// `Π x_i ≤ r!/r^r`, reporting whether `x_i = i/r` (the equality case).
/// Comparisons carry an absolute slack of 1e-12.
pub fn superadditive_product_bound(xs: &[f64]) -> ProductBound<f64> {
    const EPS: f64 = 1e-12;
    let r = xs.len();
    let bound = factorial(r) as f64 / (r as f64).powi(r as i32);
    let product: f64 = xs.iter().product();
    let hyp = r > 0
        && xs[0] >= -EPS
        && xs.windows(2).all(|w| w[0] <= w[1] + EPS)
        && (xs[r - 1] - 1.0).abs() <= EPS
        && (1..=r).all(|i| (i..=r - i).all(|j| xs[i - 1] + xs[j - 1] <= xs[i + j - 1] + EPS));
    let equality_case = (1..=r).all(|i| (xs[i - 1] - i as f64 / r as f64).abs() <= EPS);
    ProductBound {
        hypothesis_holds: hyp,
        product,
        bound,
        bound_ok: !hyp || product <= bound + EPS,
        equality_case,
    }
}

/// Exact rational version of [`superadditive_product_bound`].
pub fn superadditive_product_bound_exact(xs: &[Ratio<i64>]) -> ProductBound<Ratio<i64>> {
    let r = xs.len();
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let rr = r as i64;
    let bound = Ratio::new(factorial(r) as i64, rr.pow(r as u32));
    let product = xs.iter().fold(one, |acc, &v| acc * v);
    let hyp = r > 0
        && xs[0] >= zero
        && xs.windows(2).all(|w| w[0] <= w[1])
        && xs[r - 1] == one
        && (1..=r).all(|i| (i..=r - i).all(|j| xs[i - 1] + xs[j - 1] <= xs[i + j - 1]));
    let equality_case = (1..=r).all(|i| xs[i - 1] == Ratio::new(i as i64, rr));
    ProductBound {
        hypothesis_holds: hyp,
        bound_ok: !hyp || product <= bound,
        product,
        bound,
        equality_case,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaclaurinReport {
    pub esp_value: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `e_k(x) ≤ C(m, k)/m^k` for `x` on the simplex, `m = dim(x)`.
pub fn maclaurin_bound(x: &SimplexVector, k: usize) -> MaclaurinReport {
    let m = x.dim();
    // e[j] holds e_j of the prefix processed so far.
    let mut e = vec![0.0f64; k + 1];
    e[0] = 1.0;
    for &xi in x.as_slice() {
        for j in (1..=k).rev() {
            e[j] += xi * e[j - 1];
        }
    }
    let bound = if m == 0 {
        if k == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        binomial(m, k) as f64 / (m as f64).powi(k as i32)
    };
    MaclaurinReport {
        esp_value: e[k],
        bound,
        ok: e[k] <= bound * (1.0 + 1e-12) + 1e-15,
    }
}
