//! Reduction of a blowup to its pattern by merging twin vertices.

use serde::Serialize;

use crate::graph::{RGraph, Vertex};
use crate::numeric::factorial;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetrizationResult {
    pub pattern_graph: RGraph,
    /// `sizes[i]` is the class size of pattern vertex `i + 1`.
    pub sizes: Vec<usize>,
    /// `classes[i]` lists the input vertices merged into pattern vertex `i + 1`.
    pub classes: Vec<Vec<Vertex>>,
    pub is_symmetrized: bool,
}

/// Groups vertices with identical links (twins never share an edge) and
/// returns the induced graph on the smallest member of each class.
pub fn symmetrize_decompose(h: &RGraph) -> SymmetrizationResult {
    let n = h.n();
    let links: Vec<Vec<u64>> = (1..=n)
        .map(|v| {
            let mut l: Vec<u64> = h
                .edges()
                .iter()
                .filter(|e| e.contains(v))
                .map(|e| e.without(v).mask())
                .collect();
            l.sort_unstable();
            l
        })
        .collect();
    let mut class_of = vec![usize::MAX; n + 1];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in 1..=n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let members: Vec<Vertex> = (v..=n)
            .filter(|&u| class_of[u] == usize::MAX && links[u - 1] == links[v - 1])
            .collect();
        for &u in &members {
            class_of[u] = k;
        }
        classes.push(members);
    }
    let reps: Vec<Vertex> = classes.iter().map(|c| c[0]).collect();
    let pattern_graph = h.induced(&reps).expect("representatives are in range");
    SymmetrizationResult {
        is_symmetrized: pattern_graph.is_2_covered(),
        sizes: classes.iter().map(Vec::len).collect(),
        classes,
        pattern_graph,
    }
}

/// The pattern-size bound `2·r^{r−1}/(r−1)!` for symmetrized near-extremal graphs.
pub fn pattern_size_bound(r: usize) -> f64 {
    2.0 * (r as f64).powi(r as i32 - 1) / factorial(r - 1) as f64
}
