//! The random edge with uniform ordering and its Shannon entropies.
//!
//! Given weights `x` with `β = r!·P_H(x) > 0`, the ordered tuple
//! `(X_1, …, X_r)` takes value `(i_1, …, i_r)` with probability
//! `x_{i_1}⋯x_{i_r}/β` whenever `{i_1, …, i_r}` is an edge. All logarithms are
//! base 2.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, RGraph, Vertex};
use crate::lagrangian::{eval_poly, maximize, MaximizeConfig, SimplexVector};
use crate::numeric::{compensated_sum, factorial, CompensatedSum};
use crate::parallel::par_map;

pub const MAX_ATOMS: u128 = 1_000_000;

/// A finite distribution over vertex tuples, sorted by tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleDistribution {
    pub outcomes: Vec<(Vec<Vertex>, f64)>,
}

impl TupleDistribution {
    fn from_map(map: BTreeMap<Vec<Vertex>, CompensatedSum>) -> Self {
        TupleDistribution {
            outcomes: map
                .into_iter()
                .map(|(k, v)| (k, v.value()))
                .filter(|(_, p)| *p > 0.0)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.outcomes.iter().map(|(_, p)| *p))
    }

    pub fn prob(&self, t: &[Vertex]) -> f64 {
        self.outcomes
            .binary_search_by(|(k, _)| k.as_slice().cmp(t))
            .map_or(0.0, |i| self.outcomes[i].1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderedEdgeDistribution {
    graph: RGraph,
    weights: SimplexVector,
    beta: f64,
    atoms: TupleDistribution,
}

pub fn build_distribution(h: &RGraph, x: &SimplexVector) -> Result<OrderedEdgeDistribution> {
    if x.dim() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: x.dim(),
        });
    }
    let r = h.r();
    let count = h.len() as u128 * factorial(r);
    if count > MAX_ATOMS {
        return Err(Error::ScaleGuard(format!(
            "{count} ordered edges exceed the limit of {MAX_ATOMS}"
        )));
    }
    let xs = x.as_slice();
    let beta = factorial(r) as f64 * eval_poly(h, xs);
    if beta <= 0.0 {
        return Err(Error::ZeroNormalizer);
    }
    let per_edge = par_map(h.edges().to_vec(), |e| {
        let w: f64 = e.vertices().map(|v| xs[v - 1]).product();
        if w <= 0.0 {
            return Vec::new();
        }
        let p = w / beta;
        e.to_vec()
            .into_iter()
            .permutations(r)
            .map(|t| (t, p))
            .collect::<Vec<_>>()
    });
    let mut outcomes: Vec<(Vec<Vertex>, f64)> = per_edge.into_iter().flatten().collect();
    outcomes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(OrderedEdgeDistribution {
        graph: h.clone(),
        weights: x.clone(),
        beta,
        atoms: TupleDistribution { outcomes },
    })
}

impl OrderedEdgeDistribution {
    pub fn graph(&self) -> &RGraph {
        &self.graph
    }

    pub fn weights(&self) -> &SimplexVector {
        &self.weights
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r(&self) -> usize {
        self.graph.r()
    }

    pub fn atoms(&self) -> &TupleDistribution {
        &self.atoms
    }

    fn check_level(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.r() {
            return Err(Error::LevelOutOfRange {
                level: j,
                max: self.r(),
            });
        }
        Ok(())
    }

    /// Joint law of the coordinates `X_from, …, X_to` (1-based, inclusive), by
    /// summing atoms.
    pub fn coordinate_marginal(&self, from: usize, to: usize) -> Result<TupleDistribution> {
        if from == 0 || from > to || to > self.r() {
            return Err(Error::LevelOutOfRange {
                level: if from == 0 { from } else { to },
                max: self.r(),
            });
        }
        let mut map: BTreeMap<Vec<Vertex>, CompensatedSum> = BTreeMap::new();
        for (t, p) in &self.atoms.outcomes {
            map.entry(t[from - 1..to].to_vec()).or_default().add(*p);
        }
        Ok(TupleDistribution::from_map(map))
    }

    /// Law of the prefix `(X_1, …, X_j)` by atom summation.
    pub fn marginal(&self, j: usize) -> Result<TupleDistribution> {
        self.check_level(j)?;
        self.coordinate_marginal(1, j)
    }

    /// Law of the prefix `(X_1, …, X_j)` from the ordered-link formula
    /// `y = (Π_{s∈S} x_s / β) · (r−j)! · Σ_{e ⊇ S} Π_{v∈e∖S} x_v`.
    pub fn marginal_formula(&self, j: usize) -> Result<TupleDistribution> {
        self.check_level(j)?;
        let r = self.r();
        let xs = self.weights.as_slice();
        let mut link_sum: BTreeMap<Edge, CompensatedSum> = BTreeMap::new();
        for &e in self.graph.edges() {
            for sub in e.vertices().combinations(j) {
                let s = Edge::from_vertices(sub);
                let rest: f64 = e.difference(s).vertices().map(|v| xs[v - 1]).product();
                link_sum.entry(s).or_default().add(rest);
            }
        }
        let tail = factorial(r - j) as f64;
        let mut outcomes = Vec::new();
        for (s, sum) in link_sum {
            let head: f64 = s.vertices().map(|v| xs[v - 1]).product();
            let y = head / self.beta * tail * sum.value();
            if y > 0.0 {
                for t in s.to_vec().into_iter().permutations(j) {
                    outcomes.push((t, y));
                }
            }
        }
        outcomes.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(TupleDistribution { outcomes })
    }

    /// Whether every coordinate permutation of every atom has the same probability.
    pub fn is_exchangeable(&self, tol: f64) -> bool {
        self.atoms.outcomes.iter().all(|(t, p)| {
            t.iter()
                .copied()
                .permutations(t.len())
                .all(|q| (self.atoms.prob(&q) - p).abs() <= tol)
        })
    }

    /// Whether each ordered `(r−1)`-prefix of an atom extends to a unique atom.
    pub fn prefix_extensions_unique(&self) -> bool {
        let r = self.r();
        let mut ext: BTreeMap<&[Vertex], usize> = BTreeMap::new();
        for (t, _) in &self.atoms.outcomes {
            *ext.entry(&t[..r - 1]).or_default() += 1;
        }
        ext.values().all(|&c| c == 1)
    }

    pub fn joint_entropy(&self) -> f64 {
        entropy(&self.atoms)
    }
}

/// Shannon entropy in bits, skipping zero-probability outcomes.
pub fn entropy(d: &TupleDistribution) -> f64 {
    -compensated_sum(
        d.outcomes
            .iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(_, p)| p * p.log2()),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Both sides of `ℍ(X_1..X_r) − (r/j)ℍ(X_1..X_j) = log β − (r/j)Σ y log(Πx/y)`.
/// The left side uses summed marginals and the right side the link formula.
pub fn entropy_gap(d: &OrderedEdgeDistribution, j: usize) -> Result<GapReport> {
    let r = d.r() as f64;
    let jf = j as f64;
    let summed = d.marginal(j)?;
    let lhs = d.joint_entropy() - r / jf * entropy(&summed);
    let formula = d.marginal_formula(j)?;
    let xs = d.weights.as_slice();
    let corr = compensated_sum(formula.outcomes.iter().map(|(t, y)| {
        let prod: f64 = t.iter().map(|&v| xs[v - 1]).product();
        y * (prod / y).log2()
    }));
    let rhs = d.beta.log2() - r / jf * corr;
    Ok(GapReport {
        j,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapBoundReport {
    pub j: usize,
    pub gap: f64,
    pub bound: f64,
    /// `P` of the ordered `j`-shadow at `x`.
    pub shadow_poly: f64,
    pub ok: bool,
}

/// `ℍ(X_1..X_r) − (r/j)ℍ(X_1..X_j) ≥ log β − (r/j)·log P_{∂_{r−j}→H}(x)`, where the
/// ordered shadow polynomial equals `j!·P_{∂_{r−j}H}(x)`.
pub fn entropy_gap_bound(d: &OrderedEdgeDistribution, j: usize) -> Result<GapBoundReport> {
    let r = d.r();
    let jf = j as f64;
    let gap = d.joint_entropy() - r as f64 / jf * entropy(&d.marginal(j)?);
    let shadow = if j == r {
        d.graph.clone()
    } else {
        d.graph.shadow(r - j)?
    };
    let shadow_poly = factorial(j) as f64 * eval_poly(&shadow, d.weights.as_slice());
    let bound = d.beta.log2() - r as f64 / jf * shadow_poly.log2();
    Ok(GapBoundReport {
        j,
        gap,
        bound,
        shadow_poly,
        ok: gap >= bound - 1e-9,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    /// `ℍ(X_1..X_r) − r·ℍ(X_1)`.
    pub diff: f64,
    pub logbeta: f64,
    pub residual: f64,
    pub lambda: f64,
    pub maximizer: SimplexVector,
}

/// Builds the distribution at a certified maximizer and compares
/// `ℍ_r − r·ℍ_1` with `log β`.
pub fn optimal_entropy_identity(h: &RGraph, cfg: &MaximizeConfig) -> Result<IdentityReport> {
    let opt = maximize(h, cfg)?;
    if !opt.certified {
        return Err(Error::Uncertified(
            opt.note.unwrap_or_else(|| "optimum not certified".into()),
        ));
    }
    let d = build_distribution(h, &opt.maximizer)?;
    let diff = d.joint_entropy() - d.r() as f64 * entropy(&d.marginal(1)?);
    let logbeta = d.beta.log2();
    Ok(IdentityReport {
        diff,
        logbeta,
        residual: (diff - logbeta).abs(),
        lambda: opt.value,
        maximizer: opt.maximizer,
    })
}

/// `α_i = 2^{ℍ(X_i..X_r) − ℍ(X_{i+1}..X_r) − ℍ(X_i)}` for `i = 1..r`.
pub fn alphas(d: &OrderedEdgeDistribution) -> Result<Vec<f64>> {
    let r = d.r();
    let mut suffix = vec![0.0; r + 2];
    for (i, h) in suffix.iter_mut().enumerate().take(r + 1).skip(1) {
        *h = entropy(&d.coordinate_marginal(i, r)?);
    }
    (1..=r)
        .map(|i| {
            let single = entropy(&d.coordinate_marginal(i, i)?);
            Ok((suffix[i] - suffix[i + 1] - single).exp2())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperadditivityReport {
    pub ok: bool,
    /// Largest `α_i + α_j − α_{i+j}` over `i ≤ j`, `i + j ≤ r`.
    pub worst_excess: Option<f64>,
}

pub fn alpha_superadditivity(alphas: &[f64]) -> SuperadditivityReport {
    let r = alphas.len();
    let mut worst: Option<f64> = None;
    for i in 1..=r {
        for j in i..=r.saturating_sub(i) {
            let excess = alphas[i - 1] + alphas[j - 1] - alphas[i + j - 1];
            worst = Some(worst.map_or(excess, |w: f64| w.max(excess)));
        }
    }
    SuperadditivityReport {
        ok: worst.is_none_or(|w| w <= 1e-9),
        worst_excess: worst,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LogUniformVerdict {
    /// Some coordinate exceeds `1/r`.
    NotApplicable {
        max: f64,
    },
    /// `Σ x log x` differs from `−log r`.
    HypothesisFails {
        sum: f64,
    },
    /// Exactly `r` coordinates equal `1/r`.
    Holds,
    Violated {
        sum: f64,
    },
}

/// If `max x_i ≤ 1/r` and `Σ x_i log x_i = −log r`, then `x` is `1/r` on exactly
/// `r` coordinates.
pub fn entropy_log_uniform_check(x: &SimplexVector, r: usize) -> LogUniformVerdict {
    let w = 1.0 / r as f64;
    let max = x.as_slice().iter().copied().fold(0.0, f64::max);
    if max > w + 1e-12 {
        return LogUniformVerdict::NotApplicable { max };
    }
    let sum = compensated_sum(
        x.as_slice()
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| v * v.log2()),
    );
    if (sum + (r as f64).log2()).abs() > 1e-9 {
        return LogUniformVerdict::HypothesisFails { sum };
    }
    let at_w = x
        .as_slice()
        .iter()
        .filter(|&&v| (v - w).abs() <= 1e-9)
        .count();
    let zero = x.as_slice().iter().filter(|&&v| v <= 1e-9).count();
    if at_w == r && at_w + zero == x.dim() {
        LogUniformVerdict::Holds
    } else {
        LogUniformVerdict::Violated { sum }
    }
}

/// Everything the entropy machinery reports for one `(H, x)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    pub beta: f64,
    pub atoms: usize,
    /// `ℍ(X_1..X_j)` for `j = 1..r`.
    pub prefix_entropies: Vec<f64>,
    pub alphas: Vec<f64>,
    pub gaps: Vec<GapReport>,
    /// `|ℍ_r − r·ℍ_1 − log β|`.
    pub lagrangian_identity_residual: f64,
}

pub fn entropy_report(h: &RGraph, x: &SimplexVector) -> Result<EntropyReport> {
    let d = build_distribution(h, x)?;
    let r = d.r();
    let prefix_entropies = (1..=r)
        .map(|j| Ok(entropy(&d.marginal(j)?)))
        .collect::<Result<Vec<_>>>()?;
    let gaps = (1..=r)
        .map(|j| entropy_gap(&d, j))
        .collect::<Result<Vec<_>>>()?;
    let residual = (prefix_entropies[r - 1] - r as f64 * prefix_entropies[0] - d.beta.log2()).abs();
    Ok(EntropyReport {
        beta: d.beta,
        atoms: d.atoms.len(),
        alphas: alphas(&d)?,
        prefix_entropies,
        gaps,
        lagrangian_identity_residual: residual,
    })
}
