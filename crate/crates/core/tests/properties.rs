use hyperturan::entropy::{build_distribution, entropy, optimal_entropy_identity};
use hyperturan::extremal::{
    dedup_isomorphic, degree_threshold, ex_search, gen_turan, pattern_size_bound,
    symmetrize_decompose, two_covered_free_graphs, SearchConfig,
};
use hyperturan::families::{gen_t, is_free, TrianglePattern};
use hyperturan::graph::{all_r_subsets, binomial, Edge, RGraph};
use hyperturan::hgfile::{parse_hg, write_hg};
use hyperturan::lagrangian::{eval_poly, maclaurin_bound, maximize, MaximizeConfig, SimplexVector};
use hyperturan::morph::{find_homomorphism, is_homomorphism, is_isomorphic, is_isomorphism};
use hyperturan::steiner::{fano, is_sts, sts9};
use hyperturan::verify::{lagrangian_corpus, Suite};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn graph(rs: std::ops::RangeInclusive<usize>, max_n: usize) -> impl Strategy<Value = RGraph> {
    rs.prop_flat_map(move |r| (Just(r), r..=max_n.max(r)))
        .prop_flat_map(|(r, n)| {
            let m = binomial(n, r) as usize;
            (Just(r), Just(n), vec(prop::bool::weighted(0.4), m))
        })
        .prop_map(|(r, n, bits)| {
            let edges = all_r_subsets(n, r)
                .into_iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            RGraph::from_edges(n, r, edges).unwrap()
        })
}

fn graph_with_weights(
    rs: std::ops::RangeInclusive<usize>,
    max_n: usize,
) -> impl Strategy<Value = (RGraph, SimplexVector)> {
    graph(rs, max_n)
        .prop_flat_map(|g| {
            let n = g.n();
            (
                Just(g),
                vec(prop_oneof![1 => Just(0.0), 4 => 0.01f64..1.0], n),
            )
        })
        .prop_filter_map("zero weights", |(g, raw)| {
            SimplexVector::normalized(raw).ok().map(|x| (g, x))
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn t_free(g: &RGraph) -> bool {
    is_free(g, &TrianglePattern::t_family(g.r()).unwrap())
        .unwrap()
        .free
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sum_and_link_size(g in graph(2..=4, 7)) {
        let degs = g.degrees();
        prop_assert_eq!(g.r() * g.len(), degs.iter().sum::<usize>());
        for v in 1..=g.n() {
            prop_assert_eq!(g.link(v).unwrap().len(), degs[v - 1]);
        }
    }

    #[test]
    fn unit_blowup_and_duplication(g in graph(2..=3, 5), sizes in vec(1usize..=2, 5)) {
        let ones = vec![1; g.n()];
        prop_assert_eq!(g.blowup(&ones).unwrap(), g.clone());
        let sizes = &sizes[..g.n()];
        let mut dup = g.clone();
        let mut twin_of = Vec::new();
        for (v, &s) in sizes.iter().enumerate() {
            for _ in 1..s {
                twin_of.push(v + 1);
            }
        }
        for &v in &twin_of {
            dup = dup.duplicate_vertex(v).unwrap();
        }
        prop_assert!(is_isomorphic(&dup, &g.blowup(sizes).unwrap()).is_some());
    }

    #[test]
    fn isomorphism_under_relabelling((g, perm) in graph(2..=4, 7).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let h = g.relabel(&perm).unwrap();
        let fwd = is_isomorphic(&g, &h).expect("relabelling is an isomorphism");
        prop_assert!(is_isomorphism(&g, &h, &fwd));
        let back = is_isomorphic(&h, &g).expect("symmetric");
        prop_assert!(is_isomorphism(&h, &g, &back));
        prop_assert!(is_isomorphic(&g, &g).is_some());
    }

    #[test]
    fn partitions_are_transversal(g in graph(2..=4, 8)) {
        if let Some(p) = g.find_r_partition() {
            prop_assert_eq!(p.k(), g.r());
            prop_assert!(g.is_transversal_partition(&p));
        }
    }

    #[test]
    fn homomorphisms_compose(a in graph(3..=3, 5), b in graph(3..=3, 5), c in graph(3..=3, 5)) {
        if let (Some(f), Some(h)) = (find_homomorphism(&a, &b).unwrap(), find_homomorphism(&b, &c).unwrap()) {
            prop_assert!(is_homomorphism(&a, &b, &f));
            let composed: Vec<usize> = f.iter().map(|&w| h[w - 1]).collect();
            prop_assert!(is_homomorphism(&a, &c, &composed));
        }
    }

    #[test]
    fn shadows_compose(g in graph(3..=5, 7)) {
        let r = g.r();
        for i in 1..r {
            for j in 1..r - i {
                let two_step = g.shadow(i).unwrap().shadow(j).unwrap();
                prop_assert_eq!(two_step, g.shadow(i + j).unwrap());
            }
        }
    }

    #[test]
    fn delta_triples_are_t_triples(g in graph(2..=5, 8)) {
        let delta = TrianglePattern::delta(g.r()).unwrap();
        let t = TrianglePattern::t_family(g.r()).unwrap();
        let es = g.edges();
        for i in 0..es.len().min(12) {
            for j in i + 1..es.len().min(12) {
                for k in j + 1..es.len().min(12) {
                    if delta.matches(es[i], es[j], es[k]) {
                        prop_assert!(t.matches(es[i], es[j], es[k]));
                    }
                }
            }
        }
    }

    #[test]
    fn blowups_stay_t_free(g in graph(2..=4, 7), sizes in vec(1usize..=2, 7)) {
        prop_assume!(t_free(&g));
        let b = g.blowup(&sizes[..g.n()]).unwrap();
        prop_assert!(t_free(&b));
    }

    #[test]
    fn graph_triangles_agree(g in graph(2..=2, 7)) {
        let brute = !g.edges().iter().any(|&a| g.edges().iter().any(|&b| {
            let (x, y) = (a.symmetric_difference(b), a.intersection(b));
            y.len() == 1 && g.contains_edge(x)
        }));
        for p in [TrianglePattern::delta(2), TrianglePattern::c_family(2), TrianglePattern::t_family(2)] {
            prop_assert_eq!(is_free(&g, &p.unwrap()).unwrap().free, brute);
        }
    }

    #[test]
    fn links_of_t_free_graphs_are_t_free(g in graph(3..=4, 7)) {
        prop_assume!(t_free(&g));
        for v in 1..=g.n() {
            prop_assert!(t_free(&g.link(v).unwrap()));
        }
    }

    #[test]
    fn homogeneity((g, x) in graph_with_weights(2..=4, 7), t in 0.0f64..=1.0) {
        let scaled: Vec<f64> = x.as_slice().iter().map(|v| v * t).collect();
        let lhs = eval_poly(&g, &scaled);
        let rhs = t.powi(g.r() as i32) * eval_poly(&g, x.as_slice());
        prop_assert!((lhs - rhs).abs() <= 1e-14);
    }

    #[test]
    fn symmetrize_round_trip(g in graph(2..=3, 7)) {
        let s = symmetrize_decompose(&g);
        let back = s.pattern_graph.blowup(&s.sizes).unwrap();
        prop_assert!(is_isomorphic(&back, &g).is_some());
        prop_assert_eq!(s.is_symmetrized, s.pattern_graph.is_2_covered());
    }

    #[test]
    fn hg_round_trip(g in graph(2..=5, 9)) {
        prop_assert_eq!(parse_hg(&write_hg(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn entropy_structure((g, x) in graph_with_weights(2..=4, 6)) {
        prop_assume!(eval_poly(&g, x.as_slice()) > 0.0);
        let d = build_distribution(&g, &x).unwrap();
        let r = g.r();
        prop_assert!((d.atoms().total() - 1.0).abs() <= 1e-12);
        prop_assert!(d.is_exchangeable(1e-15));
        for j in 1..=r {
            let a = d.marginal(j).unwrap();
            let b = d.marginal_formula(j).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for ((ta, pa), (tb, pb)) in a.outcomes.iter().zip(&b.outcomes) {
                prop_assert_eq!(ta, tb);
                prop_assert!((pa - pb).abs() <= 1e-12);
            }
        }
        let joint = d.joint_entropy();
        prop_assert!(joint >= 0.0);
        let singles: f64 = (1..=r).map(|i| entropy(&d.coordinate_marginal(i, i).unwrap())).sum();
        prop_assert!(joint <= singles + 1e-12);
        let h1 = entropy(&d.marginal(1).unwrap());
        let suffix = |i: usize| if i > r { 0.0 } else { entropy(&d.coordinate_marginal(i, r).unwrap()) };
        for j in 1..=r {
            let chain: f64 = (j..=r)
                .map(|i| suffix(i) - suffix(i + 1) - entropy(&d.coordinate_marginal(i, i).unwrap()))
                .sum();
            prop_assert!((chain - (suffix(j) - (r - j + 1) as f64 * h1)).abs() <= 1e-9);
        }
    }

    #[test]
    fn partial_steiner_prefixes_extend_uniquely(keep in subsequence((0..12).collect::<Vec<_>>(), 1..=12)) {
        let s = sts9();
        let edges: Vec<Edge> = keep.iter().map(|&i| s.edges()[i]).collect();
        let g = RGraph::from_edges(9, 3, edges).unwrap();
        prop_assert!(g.is_partial_steiner());
        let d = build_distribution(&g, &SimplexVector::uniform(9).unwrap()).unwrap();
        prop_assert!(d.prefix_extensions_unique());
    }

    #[test]
    fn maclaurin_holds(m in 1usize..=8, raw in vec(0.0f64..1.0, 8), k in 0usize..=4) {
        prop_assume!(k <= m);
        let x = SimplexVector::normalized(raw[..m].iter().map(|v| v + 1e-9).collect()).unwrap();
        prop_assert!(maclaurin_bound(&x, k).ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn adding_an_edge_never_lowers_lambda(g in graph(2..=3, 6), pick in any::<prop::sample::Index>()) {
        let all = all_r_subsets(g.n(), g.r());
        let e = all[pick.index(all.len())];
        prop_assume!(!g.contains_edge(e));
        let mut edges = g.edges().to_vec();
        edges.push(e);
        let bigger = RGraph::from_edges(g.n(), g.r(), edges).unwrap();
        let cfg = MaximizeConfig::default();
        let a = maximize(&g, &cfg).unwrap();
        let b = maximize(&bigger, &cfg).unwrap();
        prop_assert!(a.certified && b.certified, "{:?} {:?}", a.note, b.note);
        prop_assert!(b.value >= a.value - 1e-12);
    }

    #[test]
    fn lambda_is_blowup_invariant(g in graph(2..=3, 5), sizes in vec(1usize..=2, 5)) {
        prop_assume!(!g.is_empty());
        let sizes = &sizes[..g.n()];
        let cfg = MaximizeConfig::default();
        let a = maximize(&g, &cfg).unwrap();
        let b = maximize(&g.blowup(sizes).unwrap(), &cfg).unwrap();
        prop_assert!((a.value - b.value).abs() <= 1e-7, "{} vs {}", a.value, b.value);
    }
}

#[test]
fn generator_symmetry() {
    for r in 2..=6 {
        for i in 1..r {
            let a = gen_t(r, i).unwrap();
            let b = gen_t(r, r - i).unwrap();
            assert!(is_isomorphic(&a, &b).is_some(), "r={r} i={i}");
        }
    }
}

#[test]
fn every_t_member_contains_a_weak_triple() {
    for r in 2..=6 {
        for i in 1..r {
            let t = gen_t(r, i).unwrap();
            assert!(
                !is_free(&t, &TrianglePattern::weak(r).unwrap())
                    .unwrap()
                    .free
            );
        }
    }
}

#[test]
fn covered_t_free_graphs_are_partial_steiner() {
    for (r, max_n) in [(2, 6), (3, 7), (4, 7)] {
        let p = TrianglePattern::t_family(r).unwrap();
        for n in r..=max_n {
            for g in two_covered_free_graphs(n, r, &p).unwrap() {
                assert!(g.is_partial_steiner());
            }
        }
    }
}

#[test]
fn optima_of_covered_t_free_graphs() {
    for g in lagrangian_corpus(Suite::Paper).unwrap() {
        let res = maximize(&g, &MaximizeConfig::default()).unwrap();
        let r = g.r() as f64;
        assert!(res.certified);
        assert!(res
            .maximizer
            .as_slice()
            .iter()
            .all(|&w| w <= 1.0 / r + 1e-9));
        let id = optimal_entropy_identity(&g, &MaximizeConfig::default()).unwrap();
        let fact: f64 = (1..=g.r()).map(|k| k as f64).product();
        let d = build_distribution(&g, &res.maximizer).unwrap();
        let density = (d.joint_entropy() - r * entropy(&d.marginal(1).unwrap())).exp2();
        assert!((density - fact * res.value).abs() <= 1e-7);
        assert!(id.residual <= 1e-8);
    }
}

#[test]
fn steiner_systems_are_covered_partial_steiner() {
    for s in [fano(), sts9()] {
        assert!(is_sts(&s).unwrap());
        assert!(s.is_partial_steiner() && s.is_2_covered());
    }
}

#[test]
fn mantel_closed_form_and_uniqueness() {
    let p = TrianglePattern::delta(2).unwrap();
    for n in 2..=7 {
        let rep = ex_search(n, 2, &p, &SearchConfig::default()).unwrap();
        assert_eq!(rep.max_edges, n * n / 4);
        assert_eq!(rep.witnesses.len(), 1);
        assert!(is_isomorphic(&rep.witnesses[0], &gen_turan(n, 2).unwrap()).is_some());
    }
}

#[test]
fn search_is_deterministic() {
    let p = TrianglePattern::t_family(3).unwrap();
    let a = ex_search(6, 3, &p, &SearchConfig::default()).unwrap();
    let b = ex_search(6, 3, &p, &SearchConfig::default()).unwrap();
    assert_eq!(
        (a.max_edges, a.nodes_explored, &a.witnesses),
        (b.max_edges, b.nodes_explored, &b.witnesses)
    );
}

#[test]
fn pattern_size_bound_log() {
    // Symmetrized 𝒯_3-free graphs with large minimum degree; the bound is
    // asymptotic, so small cases are reported rather than asserted.
    let eps = 1e-2;
    let mut graphs = Vec::new();
    for sizes in [[2, 2, 2], [3, 3, 3], [2, 3, 3]] {
        graphs.push(RGraph::single_edge(3).unwrap().blowup(&sizes).unwrap());
    }
    graphs.push(fano());
    graphs.push(fano().blowup(&[2; 7]).unwrap());
    let bound = pattern_size_bound(3);
    for g in dedup_isomorphic(graphs) {
        let s = symmetrize_decompose(&g);
        let min_degree = g.degrees().into_iter().min().unwrap_or(0);
        if s.is_symmetrized && t_free(&g) && min_degree as f64 >= degree_threshold(g.n(), 3, eps) {
            let m = s.pattern_graph.n();
            println!(
                "n={} m={m} bound={bound} within={}",
                g.n(),
                m as f64 <= bound
            );
        }
    }
}
