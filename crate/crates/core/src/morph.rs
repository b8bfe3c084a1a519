//! Isomorphism and homomorphism search between small hypergraphs.
//!
//! Both searches are plain backtracking over vertex assignments. Isomorphism
//! prunes with a degree/codegree invariant per vertex; homomorphism prunes by
//! requiring every partially mapped edge to land inside some edge of the target.

use crate::error::{Error, Result};
use crate::graph::{Edge, RGraph, Vertex};

/// Visit order: vertices in order of first appearance along the edge list,
/// followed by isolated vertices.
fn edge_order(g: &RGraph) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut seen = vec![false; g.n() + 1];
    let mut order = Vec::with_capacity(g.n());
    for e in g.edges() {
        for v in e.vertices() {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    let isolated = (1..=g.n()).filter(|&v| !seen[v]).collect();
    (order, isolated)
}

/// For each vertex in `order`, the edges whose last vertex (in visit order) it is.
fn closing_edges(g: &RGraph, order: &[Vertex]) -> Vec<Vec<Edge>> {
    let mut rank = vec![usize::MAX; g.n() + 1];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let mut out = vec![Vec::new(); order.len()];
    for &e in g.edges() {
        let last = e.vertices().map(|v| rank[v]).max().unwrap_or(0);
        out[last].push(e);
    }
    out
}

fn codegrees(g: &RGraph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut c = vec![vec![0u32; n + 1]; n + 1];
    for e in g.edges() {
        let vs = e.to_vec();
        for &a in &vs {
            for &b in &vs {
                if a != b {
                    c[a][b] += 1;
                }
            }
        }
    }
    c
}

fn invariants(g: &RGraph, cod: &[Vec<u32>]) -> Vec<(usize, Vec<u32>)> {
    let deg = g.degrees();
    (1..=g.n())
        .map(|v| {
            let mut row: Vec<u32> = (1..=g.n()).filter(|&w| w != v).map(|w| cod[v][w]).collect();
            row.sort_unstable();
            (deg[v - 1], row)
        })
        .collect()
}

/// A vertex bijection `map` (with `map[v - 1]` the image of `v`) carrying the
/// edges of `g` onto the edges of `h`, or `None`.
pub fn is_isomorphic(g: &RGraph, h: &RGraph) -> Option<Vec<Vertex>> {
    if g.n() != h.n() || g.r() != h.r() || g.len() != h.len() {
        return None;
    }
    if g == h {
        return Some((1..=g.n()).collect());
    }
    let gc = codegrees(g);
    let hc = codegrees(h);
    let gi = invariants(g, &gc);
    let hi = invariants(h, &hc);
    let mut a = gi.clone();
    let mut b = hi.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let (mut order, isolated) = edge_order(g);
    order.extend(isolated);
    let closing = closing_edges(g, &order);
    let mut map = vec![0usize; g.n() + 1];
    let mut used = vec![false; h.n() + 1];
    let ctx = IsoCtx {
        order: &order,
        closing: &closing,
        gi: &gi,
        hi: &hi,
        gc: &gc,
        hc: &hc,
        h,
    };
    if iso_rec(&ctx, 0, &mut map, &mut used) {
        Some(map[1..].to_vec())
    } else {
        None
    }
}

struct IsoCtx<'a> {
    order: &'a [Vertex],
    closing: &'a [Vec<Edge>],
    gi: &'a [(usize, Vec<u32>)],
    hi: &'a [(usize, Vec<u32>)],
    gc: &'a [Vec<u32>],
    hc: &'a [Vec<u32>],
    h: &'a RGraph,
}

fn iso_rec(ctx: &IsoCtx<'_>, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if k == ctx.order.len() {
        return true;
    }
    let v = ctx.order[k];
    for w in 1..=ctx.h.n() {
        if used[w] || ctx.gi[v - 1] != ctx.hi[w - 1] {
            continue;
        }
        let pair_ok = ctx.order[..k]
            .iter()
            .all(|&u| ctx.gc[v][u] == ctx.hc[w][map[u]]);
        if !pair_ok {
            continue;
        }
        map[v] = w;
        let edges_ok = ctx.closing[k].iter().all(|e| {
            ctx.h
                .contains_edge(Edge::from_vertices(e.vertices().map(|u| map[u])))
        });
        if edges_ok {
            used[w] = true;
            if iso_rec(ctx, k + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = 0;
    }
    false
}

/// A vertex map `map` (with `map[v - 1]` the image of `v`) sending every edge
/// of `g` to an edge of `h`; not necessarily injective. `None` is definitive.
pub fn find_homomorphism(g: &RGraph, h: &RGraph) -> Result<Option<Vec<Vertex>>> {
    map_search(g, h, false)
}

/// An injective homomorphism from `g` into `h`, i.e. a copy of `g` in `h`.
pub fn find_embedding(g: &RGraph, h: &RGraph) -> Result<Option<Vec<Vertex>>> {
    map_search(g, h, true)
}

fn map_search(g: &RGraph, h: &RGraph, injective: bool) -> Result<Option<Vec<Vertex>>> {
    if g.r() != h.r() {
        return Err(Error::UniformityMismatch {
            left: g.r(),
            right: h.r(),
        });
    }
    if g.n() > 0 && h.n() == 0 {
        return Ok(None);
    }
    if injective && (g.n() > h.n() || g.len() > h.len()) {
        return Ok(None);
    }
    if !g.is_empty() && h.is_empty() {
        return Ok(None);
    }
    let mut partial: Vec<u64> = h
        .edges()
        .iter()
        .flat_map(|e| e.subsets())
        .map(|s| s.mask())
        .collect();
    partial.sort_unstable();
    partial.dedup();
    let (order, isolated) = edge_order(g);
    let mut rank = vec![usize::MAX; g.n() + 1];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    // Edges through each vertex, for checking partial images.
    let through: Vec<Vec<Edge>> = order
        .iter()
        .map(|&v| {
            g.edges()
                .iter()
                .copied()
                .filter(|e| e.contains(v))
                .collect()
        })
        .collect();
    let mut map = vec![0usize; g.n() + 1];
    let mut used = vec![false; h.n() + 1];
    let ctx = HomCtx {
        order: &order,
        rank: &rank,
        through: &through,
        partial: &partial,
        target_n: h.n(),
        injective,
    };
    if !hom_rec(&ctx, 0, &mut map, &mut used) {
        return Ok(None);
    }
    let mut free = (1..=h.n()).filter(|&w| !used[w]);
    for v in isolated {
        map[v] = if injective {
            free.next().expect("enough unused target vertices")
        } else {
            1
        };
    }
    Ok(Some(map[1..].to_vec()))
}

struct HomCtx<'a> {
    order: &'a [Vertex],
    rank: &'a [usize],
    through: &'a [Vec<Edge>],
    partial: &'a [u64],
    target_n: usize,
    injective: bool,
}

fn hom_rec(ctx: &HomCtx<'_>, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if k == ctx.order.len() {
        return true;
    }
    let v = ctx.order[k];
    for w in 1..=ctx.target_n {
        if ctx.injective && used[w] {
            continue;
        }
        map[v] = w;
        let ok = ctx.through[k].iter().all(|e| {
            let mut img = 0u64;
            let mut count = 0u32;
            for u in e.vertices() {
                if ctx.rank[u] <= k {
                    img |= 1u64 << (map[u] - 1);
                    count += 1;
                }
            }
            img.count_ones() == count && ctx.partial.binary_search(&img).is_ok()
        });
        if ok {
            used[w] = true;
            if hom_rec(ctx, k + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
    }
    map[v] = 0;
    false
}

/// Checks that `map` is a homomorphism from `g` to `h`.
pub fn is_homomorphism(g: &RGraph, h: &RGraph, map: &[Vertex]) -> bool {
    map.len() == g.n()
        && map.iter().all(|&w| w >= 1 && w <= h.n())
        && g.edges().iter().all(|e| {
            let img = Edge::from_vertices(e.vertices().map(|v| map[v - 1]));
            img.len() == g.r() && h.contains_edge(img)
        })
}

/// Checks that `map` is an isomorphism from `g` onto `h`.
pub fn is_isomorphism(g: &RGraph, h: &RGraph, map: &[Vertex]) -> bool {
    if g.n() != h.n() || g.len() != h.len() || map.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; h.n() + 1];
    for &w in map {
        if w == 0 || w > h.n() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    is_homomorphism(g, h, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gen_t;

    fn k4_minus() -> RGraph {
        RGraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn triangle_generators_are_isomorphic_in_pairs() {
        let a = gen_t(3, 2).unwrap();
        let b = gen_t(3, 1).unwrap();
        let m = is_isomorphic(&a, &b).expect("T(3,2) ≅ T(3,1)");
        assert!(is_isomorphism(&a, &b, &m));
    }

    #[test]
    fn identity_and_rejections() {
        let g = gen_t(4, 2).unwrap();
        assert_eq!(is_isomorphic(&g, &g), Some((1..=9).collect()));
        let t = gen_t(3, 1).unwrap();
        assert!(is_isomorphic(&t, &k4_minus()).is_none());
        // same counts, different structure
        let a = RGraph::new(4, 2, [[1, 2], [3, 4]]).unwrap();
        let b = RGraph::new(4, 2, [[1, 2], [2, 3]]).unwrap();
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn homomorphism_examples() {
        let e = RGraph::single_edge(3).unwrap();
        let t = gen_t(3, 1).unwrap();
        assert_eq!(find_homomorphism(&t, &e).unwrap(), None);
        let b = e.blowup(&[2, 3, 1]).unwrap();
        let m = find_homomorphism(&b, &e).unwrap().unwrap();
        assert!(is_homomorphism(&b, &e, &m));
        let k = RGraph::complete(9, 3).unwrap();
        let m = find_homomorphism(&t, &k).unwrap().unwrap();
        assert!(is_homomorphism(&t, &k, &m));
        assert!(find_homomorphism(&t, &RGraph::complete(4, 2).unwrap()).is_err());
    }

    #[test]
    fn homomorphism_exhaustive_oracle_t31_to_edge() {
        // all 3^5 maps of the non-isolated vertices of T(3,1) into a 3-edge
        let t = gen_t(3, 1).unwrap();
        let e = RGraph::single_edge(3).unwrap();
        let mut found = false;
        for code in 0..243usize {
            let mut map: Vec<usize> = (0..5)
                .map(|k| code / 3usize.pow(k as u32) % 3 + 1)
                .collect();
            map.extend([1, 1]);
            found |= is_homomorphism(&t, &e, &map);
        }
        assert!(!found);
    }
}
