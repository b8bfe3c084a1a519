//! Triangle-like three-edge configurations and freeness tests.
//!
//! All predicates take an ordered triple `(A, B, C)`; the freeness scan tries
//! every role assignment of each unordered edge triple.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, RGraph, Vertex};
use crate::morph::find_homomorphism;

/// The three-edge graph `{1..r}, {1..i, r+1..2r−i}, {i+1..r, r+1, 2r−i+1..2r−1}`
/// on `2r + 1` vertices.
pub fn gen_t(r: usize, i: usize) -> Result<RGraph> {
    if r < 2 || i == 0 || i >= r {
        return Err(Error::IndexOutOfRange {
            r,
            i,
            max: r.saturating_sub(1),
        });
    }
    let e1: Vec<Vertex> = (1..=r).collect();
    let e2: Vec<Vertex> = (1..=i).chain(r + 1..=2 * r - i).collect();
    let e3: Vec<Vertex> = (i + 1..=r)
        .chain(std::iter::once(r + 1))
        .chain(2 * r - i + 1..2 * r)
        .collect();
    RGraph::new(2 * r + 1, r, [e1, e2, e3])
}

/// Upper end of the index range `1 ≤ i ≤ ⌈r/2⌉` used by the Δ family.
pub fn delta_max_index(r: usize) -> usize {
    r.div_ceil(2)
}

/// The Δ_r members `gen_t(r, i)` for `1 ≤ i ≤ ⌈r/2⌉`.
pub fn delta_family(r: usize) -> Result<Vec<RGraph>> {
    (1..=delta_max_index(r)).map(|i| gen_t(r, i)).collect()
}

#[inline]
pub fn c_triple(a: Edge, b: Edge, c: Edge) -> bool {
    a.symmetric_difference(b).is_subset(c)
}

#[inline]
pub fn t_triple(a: Edge, b: Edge, c: Edge) -> bool {
    a.is_subset(b.union(c)) && !b.intersection(c).difference(a).is_empty()
}

#[inline]
pub fn weak_triple(a: Edge, b: Edge, c: Edge) -> bool {
    let d = a.symmetric_difference(b);
    2 * c.intersection(d).len() > d.len()
}

/// Closed form of "{A, B, C} is a copy of T(r, i)" for the role assignment in
/// which `A, B` are the two edges meeting in `i` vertices.
#[inline]
pub fn single_t_triple(a: Edge, b: Edge, c: Edge, i: usize) -> bool {
    let ab = a.intersection(b);
    ab.len() == i
        && c.intersection(ab).is_empty()
        && a.difference(b).is_subset(c)
        && c.intersection(b.difference(a)).len() == 1
        && c.difference(a.union(b)).len() + 1 == i
}

fn to_edges(r: usize, sets: [&[Vertex]; 3]) -> Result<[Edge; 3]> {
    let mut out = [Edge::EMPTY; 3];
    for (k, s) in sets.iter().enumerate() {
        let e = Edge::from_vertices(s.iter().copied());
        if s.len() != r
            || e.len() != r
            || s.iter().any(|&v| v == 0 || v > crate::graph::MAX_VERTICES)
        {
            return Err(Error::Arity {
                expected: r,
                got: s.to_vec(),
            });
        }
        out[k] = e;
    }
    Ok(out)
}

fn arity(a: &[Vertex]) -> usize {
    a.len()
}

/// `A △ B ⊆ C` for the given role assignment.
pub fn is_c_triple(a: &[Vertex], b: &[Vertex], c: &[Vertex]) -> Result<bool> {
    let [a, b, c] = to_edges(arity(a), [a, b, c])?;
    Ok(c_triple(a, b, c))
}

/// `A ⊆ B ∪ C` and `(B ∩ C) \ A ≠ ∅`.
pub fn is_t_triple(a: &[Vertex], b: &[Vertex], c: &[Vertex]) -> Result<bool> {
    let [a, b, c] = to_edges(arity(a), [a, b, c])?;
    Ok(t_triple(a, b, c))
}

/// `|C ∩ (A △ B)| > |A △ B| / 2`.
pub fn is_weak_triple(a: &[Vertex], b: &[Vertex], c: &[Vertex]) -> Result<bool> {
    let [a, b, c] = to_edges(arity(a), [a, b, c])?;
    Ok(weak_triple(a, b, c))
}

/// Whether the three sets form a copy of `gen_t(r, i)` under some role assignment.
pub fn is_single_t_triple(a: &[Vertex], b: &[Vertex], c: &[Vertex], i: usize) -> Result<bool> {
    let r = arity(a);
    let [a, b, c] = to_edges(r, [a, b, c])?;
    Ok(orderings(a, b, c)
        .iter()
        .any(|&(x, y, z)| single_t_triple(x, y, z, i)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Delta,
    CFamily,
    TFamily,
    Weak,
    Single(usize),
}

/// A triangle family at a fixed uniformity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TrianglePattern {
    pub kind: PatternKind,
    pub r: usize,
}

impl TrianglePattern {
    pub fn new(kind: PatternKind, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidUniformity(r));
        }
        if let PatternKind::Single(i) = kind {
            let max = delta_max_index(r);
            if i == 0 || i > max {
                return Err(Error::IndexOutOfRange { r, i, max });
            }
        }
        Ok(TrianglePattern { kind, r })
    }

    pub fn delta(r: usize) -> Result<Self> {
        Self::new(PatternKind::Delta, r)
    }

    pub fn c_family(r: usize) -> Result<Self> {
        Self::new(PatternKind::CFamily, r)
    }

    pub fn t_family(r: usize) -> Result<Self> {
        Self::new(PatternKind::TFamily, r)
    }

    pub fn weak(r: usize) -> Result<Self> {
        Self::new(PatternKind::Weak, r)
    }

    pub fn single(r: usize, i: usize) -> Result<Self> {
        Self::new(PatternKind::Single(i), r)
    }

    /// Parses a CLI pattern name. `delta`, `cfam`, `tfam` and `weak` take their
    /// uniformity from `r`; `t:<r>:<i>` carries its own, which must agree.
    pub fn parse(name: &str, r: usize) -> Result<Self> {
        let kind: PatternKind = name.parse()?;
        if let Some(rest) = name.strip_prefix("t:") {
            let own: usize = rest
                .split(':')
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::UnknownPattern(name.into()))?;
            if own != r {
                return Err(Error::UniformityMismatch {
                    left: own,
                    right: r,
                });
            }
        }
        Self::new(kind, r)
    }

    /// Whether the ordered triple matches under this particular role assignment.
    #[inline]
    pub fn matches_ordered(&self, a: Edge, b: Edge, c: Edge) -> bool {
        match self.kind {
            PatternKind::CFamily => c_triple(a, b, c),
            PatternKind::TFamily => t_triple(a, b, c),
            PatternKind::Weak => weak_triple(a, b, c),
            PatternKind::Single(i) => single_t_triple(a, b, c, i),
            PatternKind::Delta => {
                (1..=delta_max_index(self.r)).any(|i| single_t_triple(a, b, c, i))
            }
        }
    }

    /// Whether the unordered triple matches under some role assignment.
    #[inline]
    pub fn matches(&self, a: Edge, b: Edge, c: Edge) -> bool {
        orderings(a, b, c)
            .iter()
            .any(|&(x, y, z)| self.matches_ordered(x, y, z))
    }
}

impl FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(PatternKind::Delta),
            "cfam" => Ok(PatternKind::CFamily),
            "tfam" => Ok(PatternKind::TFamily),
            "weak" => Ok(PatternKind::Weak),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["t", r, i] => {
                        r.parse::<usize>()
                            .map_err(|_| Error::UnknownPattern(s.into()))?;
                        let i = i.parse().map_err(|_| Error::UnknownPattern(s.into()))?;
                        Ok(PatternKind::Single(i))
                    }
                    _ => Err(Error::UnknownPattern(s.into())),
                }
            }
        }
    }
}

impl fmt::Display for TrianglePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PatternKind::Delta => write!(f, "delta"),
            PatternKind::CFamily => write!(f, "cfam"),
            PatternKind::TFamily => write!(f, "tfam"),
            PatternKind::Weak => write!(f, "weak"),
            PatternKind::Single(i) => write!(f, "t:{}:{}", self.r, i),
        }
    }
}

#[inline]
fn orderings(a: Edge, b: Edge, c: Edge) -> [(Edge, Edge, Edge); 6] {
    [
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ]
}

/// Outcome of a freeness scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Freeness {
    pub free: bool,
    /// First offending triple in scan order, as `(A, B, C)` in a matching role assignment.
    pub witness: Option<[Edge; 3]>,
}

/// Scans all edge triples of `h` for the pattern; returns the first witness.
pub fn is_free(h: &RGraph, p: &TrianglePattern) -> Result<Freeness> {
    if h.r() != p.r {
        return Err(Error::UniformityMismatch {
            left: h.r(),
            right: p.r,
        });
    }
    let es = h.edges();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            for k in j + 1..es.len() {
                for (a, b, c) in orderings(es[i], es[j], es[k]) {
                    if p.matches_ordered(a, b, c) {
                        return Ok(Freeness {
                            free: false,
                            witness: Some([a, b, c]),
                        });
                    }
                }
            }
        }
    }
    Ok(Freeness {
        free: true,
        witness: None,
    })
}

/// Whether adding `new` to the (pattern-free) edge list `existing` creates a
/// forbidden triple. Only triples through `new` are examined.
pub fn completes_forbidden(existing: &[Edge], new: Edge, p: &TrianglePattern) -> bool {
    for i in 0..existing.len() {
        for j in i + 1..existing.len() {
            if p.matches(existing[i], existing[j], new) {
                return true;
            }
        }
    }
    false
}

/// 𝒯_r-freeness decided by homomorphisms: no member of Δ_r maps into `h`.
pub fn is_t_free_via_hom(h: &RGraph) -> Result<bool> {
    if h.r() < 2 {
        return Err(Error::InvalidUniformity(h.r()));
    }
    for f in delta_family(h.r())? {
        if find_homomorphism(&f, h)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
