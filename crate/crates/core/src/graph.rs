//! r-uniform hypergraphs on the dense vertex set `1..=n`.
//!
//! Edges are stored as 64-bit vertex masks (bit `v - 1` is vertex `v`), which
//! caps the vertex count at [`MAX_VERTICES`]. The edge list is kept sorted in
//! lexicographic order of the ascending vertex tuples and deduplicated, so two
//! equal hypergraphs compare equal structurally.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Vertex = usize;

pub const MAX_VERTICES: usize = 64;

/// A set of vertices packed into a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Edge(u64);

impl Edge {
    pub const EMPTY: Edge = Edge(0);

    pub fn from_mask(mask: u64) -> Self {
        Edge(mask)
    }

    /// Builds an edge from 1-based vertex labels. Duplicates collapse.
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vs: I) -> Self {
        let mut m = 0u64;
        for v in vs {
            debug_assert!((1..=MAX_VERTICES).contains(&v));
            m |= 1u64 << (v - 1);
        }
        Edge(m)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    #[inline]
    pub fn union(self, o: Edge) -> Edge {
        Edge(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: Edge) -> Edge {
        Edge(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: Edge) -> Edge {
        Edge(self.0 & !o.0)
    }

    #[inline]
    pub fn symmetric_difference(self, o: Edge) -> Edge {
        Edge(self.0 ^ o.0)
    }

    #[inline]
    pub fn is_subset(self, o: Edge) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn with(self, v: Vertex) -> Edge {
        Edge(self.0 | (1u64 << (v - 1)))
    }

    #[inline]
    pub fn without(self, v: Vertex) -> Edge {
        Edge(self.0 & !(1u64 << (v - 1)))
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let t = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(t + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// Every subset of this edge, the empty set included.
    pub fn subsets(self) -> impl Iterator<Item = Edge> {
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = sub;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(Edge(cur))
        })
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.0 ^ other.0;
        if d == 0 {
            return Ordering::Equal;
        }
        let low = d & d.wrapping_neg();
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            // `self` holds the first differing vertex; `other` is smaller only if it stops here.
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

/// An r-uniform hypergraph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RGraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
}

impl Serialize for RGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RGraph", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

fn check_shape(n: usize, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidUniformity(r));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

impl RGraph {
    /// Builds a hypergraph from edges given as lists of 1-based labels.
    /// Edges are sorted and deduplicated; arity and range are validated.
    pub fn new<E, I>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        E: AsRef<[Vertex]>,
        I: IntoIterator<Item = E>,
    {
        check_shape(n, r)?;
        let mut out = Vec::new();
        for e in edges {
            let e = e.as_ref();
            for &v in e {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            let m = Edge::from_vertices(e.iter().copied());
            if e.len() != r || m.len() != r {
                return Err(Error::Arity {
                    expected: r,
                    got: e.to_vec(),
                });
            }
            out.push(m);
        }
        Ok(Self::from_sorted_unchecked(n, r, out))
    }

    /// Builds a hypergraph from edge masks, validating arity and range.
    pub fn from_edges(n: usize, r: usize, edges: Vec<Edge>) -> Result<Self> {
        check_shape(n, r)?;
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for e in &edges {
            if e.len() != r || e.mask() & !limit != 0 {
                return Err(Error::Arity {
                    expected: r,
                    got: e.to_vec(),
                });
            }
        }
        Ok(Self::from_sorted_unchecked(n, r, edges))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        RGraph { n, r, edges }
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        check_shape(n, r)?;
        Ok(RGraph {
            n,
            r,
            edges: Vec::new(),
        })
    }

    /// The complete r-graph on `n` vertices.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        check_shape(n, r)?;
        Ok(RGraph {
            n,
            r,
            edges: all_r_subsets(n, r),
        })
    }

    /// A single edge `{1, …, r}` on exactly `r` vertices.
    pub fn single_edge(r: usize) -> Result<Self> {
        RGraph::new(r, r, [(1..=r).collect::<Vec<_>>()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn vertex_mask(&self) -> Edge {
        if self.n == 64 {
            Edge(u64::MAX)
        } else {
            Edge((1u64 << self.n) - 1)
        }
    }

    /// Edge lists as ascending 1-based tuples.
    pub fn edge_tuples(&self) -> Vec<Vec<Vertex>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Degrees indexed by `v - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for v in e.vertices() {
                d[v - 1] += 1;
            }
        }
        d
    }

    /// Vertices lying in no edge.
    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The link of `v`: `{e \ {v} : v ∈ e}` as an (r−1)-graph on the same labels.
    pub fn link(&self, v: Vertex) -> Result<RGraph> {
        self.check_vertex(v)?;
        if self.r < 2 {
            return Err(Error::InvalidUniformity(self.r - 1));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.without(v))
            .collect();
        Ok(RGraph::from_sorted_unchecked(self.n, self.r - 1, edges))
    }

    /// The `i`-th shadow: all (r−i)-subsets of edges.
    pub fn shadow(&self, i: usize) -> Result<RGraph> {
        if i == 0 || i >= self.r {
            return Err(Error::LevelOutOfRange {
                level: i,
                max: self.r.saturating_sub(1),
            });
        }
        let k = self.r - i;
        let mut set = HashSet::new();
        for e in &self.edges {
            for s in e.subsets() {
                if s.len() == k {
                    set.insert(s);
                }
            }
        }
        Ok(RGraph::from_sorted_unchecked(
            self.n,
            k,
            set.into_iter().collect(),
        ))
    }

    /// Removes `v` and its incident edges; vertices above `v` shift down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Result<RGraph> {
        self.check_vertex(v)?;
        let low = (1u64 << (v - 1)) - 1;
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(v))
            .map(|e| Edge((e.0 & low) | ((e.0 >> 1) & !low)))
            .collect();
        Ok(RGraph::from_sorted_unchecked(self.n - 1, self.r, edges))
    }

    /// Induced subgraph on the listed vertices, relabelled `1..=k` in the listed order.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<RGraph> {
        let mut pos = vec![0usize; self.n + 1];
        for (k, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            pos[v] = k + 1;
        }
        let mask = Edge::from_vertices(vertices.iter().copied());
        let edges = self
            .edges
            .iter()
            .filter(|e| e.is_subset(mask))
            .map(|e| Edge::from_vertices(e.vertices().map(|v| pos[v])))
            .collect();
        Ok(RGraph::from_sorted_unchecked(vertices.len(), self.r, edges))
    }

    /// Applies a vertex relabelling: `perm[v - 1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<RGraph> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n + 1];
        for &p in perm {
            if p == 0 || p > self.n || seen[p] {
                return Err(Error::InvalidWeights(format!(
                    "relabelling {perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(self.map_vertices_unchecked(self.n, perm))
    }

    pub(crate) fn map_vertices_unchecked(&self, n: usize, map: &[Vertex]) -> RGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::from_vertices(e.vertices().map(|v| map[v - 1])))
            .collect();
        RGraph::from_sorted_unchecked(n, self.r, edges)
    }

    /// Replaces vertex `i` by `sizes[i - 1]` fresh vertices and each edge by the
    /// complete r-partite r-graph on its classes. Classes are numbered
    /// consecutively: vertex 1's class comes first.
    pub fn blowup(&self, sizes: &[usize]) -> Result<RGraph> {
        Ok(self.blowup_with_classes(sizes)?.0)
    }

    /// Like [`RGraph::blowup`], also returning the vertex classes.
    pub fn blowup_with_classes(&self, sizes: &[usize]) -> Result<(RGraph, Vec<Vec<Vertex>>)> {
        if sizes.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: sizes.len(),
            });
        }
        let total: usize = sizes.iter().sum();
        check_shape(total, self.r)?;
        let mut classes = Vec::with_capacity(self.n);
        let mut next = 1;
        for &s in sizes {
            classes.push((next..next + s).collect::<Vec<_>>());
            next += s;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let parts: Vec<&Vec<Vertex>> = e.vertices().map(|v| &classes[v - 1]).collect();
            if parts.iter().any(|p| p.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; parts.len()];
            loop {
                edges.push(Edge::from_vertices(
                    parts.iter().zip(&idx).map(|(p, &k)| p[k]),
                ));
                let mut pos = 0;
                while pos < idx.len() {
                    idx[pos] += 1;
                    if idx[pos] < parts[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
        Ok((RGraph::from_sorted_unchecked(total, self.r, edges), classes))
    }

    /// Adds vertex `n + 1` whose link equals the link of `v`.
    pub fn duplicate_vertex(&self, v: Vertex) -> Result<RGraph> {
        self.check_vertex(v)?;
        check_shape(self.n + 1, self.r)?;
        let new = self.n + 1;
        let mut edges = self.edges.clone();
        edges.extend(
            self.edges
                .iter()
                .filter(|e| e.contains(v))
                .map(|e| e.without(v).with(new)),
        );
        Ok(RGraph::from_sorted_unchecked(new, self.r, edges))
    }

    /// Every pair of vertices lies in some edge.
    pub fn is_2_covered(&self) -> bool {
        let mut cover = vec![0u64; self.n];
        for e in &self.edges {
            for v in e.vertices() {
                cover[v - 1] |= e.0;
            }
        }
        let all = self.vertex_mask().0;
        cover.iter().all(|&c| c == all)
    }

    /// Every (r−1)-set lies in at most one edge.
    pub fn is_partial_steiner(&self) -> bool {
        let mut seen = HashSet::new();
        for e in &self.edges {
            for v in e.vertices() {
                if !seen.insert(e.without(v)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let d = self.degrees();
        let sum: usize = d.iter().sum();
        DegreeProfile {
            min: d.iter().copied().min().unwrap_or(0),
            max: d.iter().copied().max().unwrap_or(0),
            avg: if self.n == 0 {
                Ratio::from_integer(0)
            } else {
                Ratio::new(sum as u64, self.n as u64)
            },
        }
    }

    /// A partition into exactly `r` parts such that every edge meets every part
    /// once, if one exists. Vertices in no edge are spread over the parts last.
    pub fn find_r_partition(&self) -> Option<Partition> {
        let r = self.r;
        let degrees = self.degrees();
        // Order vertices so that each new one shares edges with earlier ones.
        let mut order: Vec<Vertex> = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n + 1];
        for e in &self.edges {
            for v in e.vertices() {
                if !placed[v] {
                    placed[v] = true;
                    order.push(v);
                }
            }
        }
        let incident: Vec<Vec<Edge>> = (0..=self.n)
            .map(|v| {
                if v == 0 {
                    Vec::new()
                } else {
                    self.edges
                        .iter()
                        .copied()
                        .filter(|e| e.contains(v))
                        .collect()
                }
            })
            .collect();
        let mut color = vec![usize::MAX; self.n + 1];
        if !assign_parts(&order, 0, 0, r, &incident, &mut color) {
            return None;
        }
        let mut parts = vec![Vec::new(); r];
        for &v in &order {
            parts[color[v]].push(v);
        }
        let isolated: Vec<Vertex> = (1..=self.n).filter(|&v| degrees[v - 1] == 0).collect();
        for v in isolated {
            let k = (0..r).min_by_key(|&k| parts[k].len()).unwrap_or(0);
            parts[k].push(v);
        }
        for p in &mut parts {
            p.sort_unstable();
        }
        Some(Partition { parts })
    }

    /// Checks that `partition` covers `1..=n` disjointly and that every edge is transversal.
    pub fn is_transversal_partition(&self, partition: &Partition) -> bool {
        let mut part_of = vec![usize::MAX; self.n + 1];
        for (k, p) in partition.parts.iter().enumerate() {
            for &v in p {
                if v == 0 || v > self.n || part_of[v] != usize::MAX {
                    return false;
                }
                part_of[v] = k;
            }
        }
        if part_of[1..].contains(&usize::MAX) {
            return false;
        }
        self.edges.iter().all(|e| {
            let mut used = 0u64;
            e.vertices().all(|v| {
                let bit = 1u64 << part_of[v];
                let fresh = used & bit == 0;
                used |= bit;
                fresh
            }) && used.count_ones() as usize == partition.parts.len()
        })
    }

    /// The edges within the listed vertex mask.
    pub fn edges_within(&self, mask: Edge) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .copied()
            .filter(move |e| e.is_subset(mask))
    }
}

fn assign_parts(
    order: &[Vertex],
    k: usize,
    used: usize,
    r: usize,
    incident: &[Vec<Edge>],
    color: &mut [usize],
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    // Symmetry breaking: a fresh part is only opened in index order.
    let limit = (used + 1).min(r);
    for c in 0..limit {
        color[v] = c;
        let ok = incident[v]
            .iter()
            .all(|e| e.vertices().filter(|&u| u != v).all(|u| color[u] != c));
        if ok && assign_parts(order, k + 1, used.max(c + 1), r, incident, color) {
            return true;
        }
    }
    color[v] = usize::MAX;
    false
}

/// All r-subsets of `1..=n` in lexicographic order.
pub fn all_r_subsets(n: usize, r: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=r).collect();
    loop {
        out.push(Edge::from_vertices(idx.iter().copied()));
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub avg: Ratio<u64>,
}

impl Serialize for DegreeProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DegreeProfile", 3)?;
        st.serialize_field("min", &self.min)?;
        st.serialize_field("max", &self.max)?;
        st.serialize_field("avg", &format!("{}", self.avg))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub parts: Vec<Vec<Vertex>>,
}

impl Partition {
    pub fn k(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for RGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-graph on {} vertices {{", self.r, self.n)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t31() -> RGraph {
        RGraph::new(5, 3, [[1, 2, 3], [1, 4, 5], [2, 3, 4]]).unwrap()
    }

    fn t3_6() -> RGraph {
        RGraph::single_edge(3).unwrap().blowup(&[2, 2, 2]).unwrap()
    }

    fn tuples(g: &RGraph) -> Vec<Vec<usize>> {
        g.edge_tuples()
    }

    #[test]
    fn edge_order_is_lexicographic() {
        let mut es: Vec<Edge> = [[2, 3, 4], [1, 4, 5], [1, 2, 3], [1, 2, 5]]
            .iter()
            .map(|e| Edge::from_vertices(e.iter().copied()))
            .collect();
        es.sort();
        let v: Vec<_> = es.iter().map(|e| e.to_vec()).collect();
        assert_eq!(
            v,
            vec![vec![1, 2, 3], vec![1, 2, 5], vec![1, 4, 5], vec![2, 3, 4]]
        );
        assert_eq!(all_r_subsets(4, 2).len(), 6);
        assert!(all_r_subsets(5, 3).windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(matches!(
            RGraph::new(3, 3, [[1, 2, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, .. })
        ));
        assert!(matches!(
            RGraph::new(3, 3, [vec![1, 2]]),
            Err(Error::Arity { .. })
        ));
        assert!(matches!(
            RGraph::new(3, 3, [[1, 1, 2]]),
            Err(Error::Arity { .. })
        ));
        let g = RGraph::new(3, 2, [[2, 1], [1, 2], [2, 3]]).unwrap();
        assert_eq!(tuples(&g), vec![vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn link_examples() {
        assert_eq!(
            tuples(&t31().link(1).unwrap()),
            vec![vec![2, 3], vec![4, 5]]
        );
        let g = RGraph::new(4, 3, [[1, 2, 3]]).unwrap();
        assert!(g.link(4).unwrap().is_empty());
        assert_eq!(
            tuples(&t3_6().link(1).unwrap()),
            vec![vec![3, 5], vec![3, 6], vec![4, 5], vec![4, 6]]
        );
        assert!(t31().link(6).is_err());
    }

    #[test]
    fn shadow_examples() {
        let e = RGraph::single_edge(3).unwrap();
        assert_eq!(
            tuples(&e.shadow(1).unwrap()),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(t31().shadow(2).unwrap().len(), 5);
        assert_eq!(t3_6().shadow(1).unwrap().len(), 12);
        assert!(t31().shadow(3).is_err());
        assert!(t31().shadow(0).is_err());
    }

    #[test]
    fn remove_vertex_examples() {
        let g = t31().remove_vertex(5).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(tuples(&g), vec![vec![1, 2, 3], vec![2, 3, 4]]);
        assert!(RGraph::single_edge(3)
            .unwrap()
            .remove_vertex(2)
            .unwrap()
            .is_empty());
        assert_eq!(t3_6().remove_vertex(1).unwrap().len(), 4);
        // relabelling shifts higher vertices down
        let g = t31().remove_vertex(1).unwrap();
        assert_eq!(tuples(&g), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn blowup_examples() {
        let g = t3_6();
        assert_eq!(g.len(), 8);
        assert_eq!(g.n(), 6);
        let k3 = RGraph::complete(3, 2).unwrap();
        assert_eq!(k3.blowup(&[2, 2, 2]).unwrap().len(), 12);
        assert_eq!(t31().blowup(&[1; 5]).unwrap(), t31());
        assert!(t31().blowup(&[1, 2]).is_err());
        // empty classes drop their edges
        assert_eq!(t31().blowup(&[0, 1, 1, 1, 1]).unwrap().len(), 1);
    }

    #[test]
    fn duplicate_examples() {
        let g = RGraph::new(2, 2, [[1, 2]])
            .unwrap()
            .duplicate_vertex(1)
            .unwrap();
        assert_eq!(tuples(&g), vec![vec![1, 2], vec![2, 3]]);
        let g = RGraph::new(3, 2, [[1, 2]])
            .unwrap()
            .duplicate_vertex(3)
            .unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.len(), 1);
        assert_eq!(t31().duplicate_vertex(2).unwrap().len(), 5);
    }

    #[test]
    fn covering_and_steiner() {
        assert!(RGraph::single_edge(4).unwrap().is_2_covered());
        assert!(!t31().is_2_covered());
        let k4m = RGraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [2, 3, 4]]).unwrap();
        assert!(!k4m.is_partial_steiner());
        assert!(RGraph::single_edge(5).unwrap().is_partial_steiner());
    }

    #[test]
    fn r_partition_examples() {
        let p = t3_6().find_r_partition().unwrap();
        assert_eq!(p.parts, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert!(t3_6().is_transversal_partition(&p));
        assert!(RGraph::complete(4, 3).unwrap().find_r_partition().is_none());
        let e = RGraph::empty(5, 3).unwrap();
        let p = e.find_r_partition().unwrap();
        assert_eq!(p.k(), 3);
        assert!(p.parts.iter().all(|q| !q.is_empty()));
        assert!(e.is_transversal_partition(&p));
    }

    #[test]
    fn r_partition_exhaustive_oracle_on_k4_3() {
        // every map of 4 vertices into 3 parts puts some edge on a repeated part
        let g = RGraph::complete(4, 3).unwrap();
        for code in 0..81usize {
            let col: Vec<usize> = (0..4).map(|k| code / 3usize.pow(k) % 3).collect();
            let ok = g.edges().iter().all(|e| {
                let cs: HashSet<usize> = e.vertices().map(|v| col[v - 1]).collect();
                cs.len() == 3
            });
            assert!(!ok);
        }
    }

    #[test]
    fn degree_profile_examples() {
        let d = t3_6().degree_profile();
        assert_eq!((d.min, d.max, d.avg), (4, 4, Ratio::from_integer(4)));
        let d = RGraph::single_edge(4).unwrap().degree_profile();
        assert_eq!((d.min, d.max), (1, 1));
        let d = t31().degree_profile();
        assert_eq!((d.min, d.max), (1, 2));
        assert_eq!(d.avg, Ratio::new(9, 5));
    }

    #[test]
    fn induced_and_relabel() {
        let g = t31();
        let h = g.induced(&[2, 3, 4]).unwrap();
        assert_eq!(tuples(&h), vec![vec![1, 2, 3]]);
        let p = g.relabel(&[5, 4, 3, 2, 1]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.contains_edge(Edge::from_vertices([1, 2, 5])));
        assert!(g.relabel(&[1, 1, 2, 3, 4]).is_err());
    }
}
