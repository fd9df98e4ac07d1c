mod common;

use std::collections::BTreeMap;

use arrangeo::exact::geometry::{singular_points, Arrangement, Line, PointKind};
use arrangeo::graph::{
    betti, betti_whole_segment, build_graph, cfg_check_cl, cfg_check_line, emit_dot, prscf_condition, replay_trace,
    TerminalRule,
};
use proptest::prelude::*;

/// First Betti number straight from the singular points: one edge per pair
/// of consecutive multiple points along a line, components by union-find.
fn betti_oracle(arr: &Arrangement) -> i64 {
    let pts: Vec<_> =
        singular_points(arr).unwrap().into_iter().filter(|p| p.kind == PointKind::Intersection && p.multiplicity >= 3).collect();
    let mut parent: Vec<usize> = (0..pts.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let mut per_line: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        for l in p.lines() {
            per_line.entry(l).or_default().push(i);
        }
    }
    let mut edges = 0i64;
    for members in per_line.values() {
        edges += members.len() as i64 - 1;
        for w in members.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let comps = (0..pts.len()).filter(|&i| find(&mut parent, i) == i).count() as i64;
    edges - pts.len() as i64 + comps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn betti_matches_the_oracle(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let arr = match seed % 3 {
            0 => common::nodes_only(&mut rng),
            1 => common::forest_lines(&mut rng),
            _ => common::beta_at_most_one(&mut rng),
        };
        let g = build_graph(&arr).unwrap();
        prop_assert_eq!(betti(&g), betti_oracle(&arr));
        prop_assert_eq!(betti(&g), betti_whole_segment(&g));
    }

    #[test]
    fn forests_are_cfg(seed in any::<u64>()) {
        let g = build_graph(&common::forest_lines(&mut common::rng(seed))).unwrap();
        let v = cfg_check_line(&g);
        prop_assert!(v.is_cfg);
        prop_assert!(v.trace.is_empty());
    }
}

#[test]
fn ceva_graph() {
    let arr = common::ceva();
    let g = build_graph(&arr).unwrap();
    assert_eq!((g.vertices.len(), g.edges.len()), (4, 6));
    assert_eq!(betti(&g), betti_oracle(&arr));
    let v = cfg_check_line(&g);
    assert!(!v.is_cfg);
    assert_eq!(v.rule, TerminalRule::Stuck);
    assert_eq!(replay_trace(&g, &v.trace), v.terminal);
}

#[test]
fn conic_example_has_a_witness() {
    let g = build_graph(&common::graph_com2()).unwrap();
    assert_eq!(betti(&g), 1);
    assert_eq!(g.vertices.iter().filter(|v| v.on_conic).count(), 1);
    let w = prscf_condition(&g).unwrap().expect("witness");
    assert!(!g.vertices[w].on_conic);
    let v = cfg_check_cl(&g);
    assert!(v.is_cfg);
    assert_eq!((v.rule, v.witness), (TerminalRule::BettiOneWithWitness, Some(w)));
}

#[test]
fn circumconic_triangle_has_no_witness() {
    let g = build_graph(&common::pi1_ab_a()).unwrap();
    assert_eq!(betti(&g), 1);
    assert_eq!(prscf_condition(&g).unwrap(), None);
    assert!(!cfg_check_cl(&g).is_cfg);
}

#[test]
fn dot_output() {
    let empty = build_graph(&Arrangement::lines_only(vec![Line::from_ints(0, 1, 0), Line::from_ints(1, -1, 0)])).unwrap();
    assert_eq!(emit_dot(&empty), "graph G {\n}\n");
    let dot = emit_dot(&build_graph(&common::graph_com2()).unwrap());
    assert_eq!(dot.matches("peripheries=2").count(), 1);
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert!(dot.starts_with("graph G {\n") && dot.ends_with("}\n"));
    assert_eq!(dot, emit_dot(&build_graph(&common::graph_com2()).unwrap()));
}
