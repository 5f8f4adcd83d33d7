use thetagraph_core::dynamo::{build_graph, build_graph_with_budget, element_of, vertex_of};
use thetagraph_core::predictor::Predictor;
use thetagraph_core::verify::verify;
use thetagraph_core::{census, FieldSpec, FunctionalGraph, P1Element};

#[test]
fn table_agrees_with_theta() {
    for (p, n) in [(5, 1), (5, 2), (5, 3), (5, 4), (7, 2), (3, 3), (11, 1)] {
        let f = FieldSpec::new(p, n).unwrap();
        let t = build_graph(&f).unwrap();
        assert_eq!(t.len() as u64, f.order() + 1);
        for v in 0..t.len() as u32 {
            let x = element_of(&f, v);
            assert_eq!(vertex_of(&f, &x).unwrap(), v);
            assert_eq!(vertex_of(&f, &f.theta(&x)).unwrap(), t.successor(v), "p={p} n={n} v={v}");
        }
        assert_eq!(t.successor(t.zero_vertex()), t.infinity_vertex());
        assert_eq!(t.successor(t.infinity_vertex()), t.infinity_vertex());
    }
}

#[test]
fn budget_is_enforced() {
    let f = FieldSpec::new(5, 3).unwrap();
    assert!(build_graph_with_budget(&f, 100).is_err());
    assert!(build_graph_with_budget(&f, 126).is_ok());
}

#[test]
fn every_vertex_reaches_a_cycle() {
    for n in 1..=5 {
        let f = FieldSpec::new(5, n).unwrap();
        let g = FunctionalGraph::new(build_graph(&f).unwrap());
        for v in 0..g.table().len() as u32 {
            assert!(g.steps_to_cycle(v).is_some(), "n={n} v={v}");
        }
        let on_cycles: usize = g.cycles().iter().map(Vec::len).sum();
        assert_eq!(on_cycles, (0..g.table().len() as u32).filter(|&v| g.is_cyclic(v)).count());
    }
}

#[test]
fn predecessor_rules() {
    for n in 1..=5 {
        let f = FieldSpec::new(5, n).unwrap();
        let g = FunctionalGraph::new(build_graph(&f).unwrap());
        let inf = g.table().infinity_vertex();
        let tree_preds = |v: u32| g.predecessors(v).iter().filter(|&&u| !g.is_cyclic(u)).count();
        for v in 0..g.table().len() as u32 {
            if g.is_cyclic(v) {
                assert_eq!(tree_preds(v), 1, "n={n} cycle vertex {v}");
                continue;
            }
            let level = g.steps_to_cycle(v).unwrap();
            let mut root = v;
            for _ in 0..level {
                root = g.table().successor(root);
            }
            let k = g.predecessors(v).len();
            if root == inf && level == 2 {
                assert_eq!(k, 1, "n={n} level-2 vertex {v} of the inf tree");
            } else {
                assert!(k == 0 || k == 2, "n={n} vertex {v} has {k} predecessors");
            }
        }
    }
}

#[test]
fn census_matches_prediction() {
    for n in 1..=6 {
        let r = verify(n, &Predictor::default()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn worked_example_components() {
    let f = FieldSpec::new(5, 3).unwrap();
    let s = census(&f).unwrap();
    let mut sizes: Vec<u64> = s.components.iter().map(|c| c.size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![6, 36, 36, 48]);
    assert_eq!(s.total_vertices(), 126);
    assert_eq!(s.partition, Some((76, 48, 2)));
}

#[test]
fn other_characteristics_have_no_partition() {
    let f = FieldSpec::new(7, 2).unwrap();
    let s = census(&f).unwrap();
    assert_eq!(s.partition, None);
    assert_eq!(s.total_vertices(), 50);
    assert!(s.components.iter().all(|c| c.class.is_none()));
    assert!(s.spectra.contains_key(&None));
    let x = element_of(&f, 0);
    assert_eq!(x, P1Element::Finite(f.one()));
}
