mod common;

use common::*;
use proptest::prelude::*;

use semifact::graph::{
    contract_infinite, enumerate_circuits, first_blowup, fundamental_circuits, isomorphic_fixing, nth_blowup,
    spanning_tree, total_blowup, BlowupGraph, GraphBuilder, SpanningTree,
};
use semifact::{Error, LabelInput, LabelledGraph};

#[test]
fn build_rejects_bad_input() {
    let two = || LabelledGraph::builder().vertices(["a", "b"]);
    assert!(matches!(two().build(), Err(Error::DisconnectedGraph(..))));
    assert!(matches!(two().edge("e", "a", "c", 1).build(), Err(Error::DanglingEndpoint { .. })));
    assert!(matches!(two().edge("e", "a", "b", 1).edge("e", "b", "a", 1).build(), Err(Error::DuplicateId(_))));
    assert!(matches!(two().vertex("a").edge("e", "a", "b", 1).build(), Err(Error::DuplicateId(_))));
    for bad in [0, -3] {
        assert!(matches!(two().edge("e", "a", "b", bad).build(), Err(Error::InvalidLabel { .. })));
    }
    assert!(matches!(GraphBuilder::new().build(), Err(Error::EmptyGraph)));
    let lone = LabelledGraph::builder().vertex("v").build().unwrap();
    assert_eq!((lone.vertex_count(), lone.nullity()), (1, 0));
}

#[test]
fn paper_tree_links() {
    let g = g_paper();
    let t = SpanningTree::from_edge_ids(&g, &["e1", "e3", "e5"]).unwrap();
    let link_labels: Vec<_> = t.links().iter().map(|&e| g.edge(e).label.value().unwrap()).collect();
    assert_eq!(link_labels, [2, 15]);
    assert!(SpanningTree::from_edge_ids(&g, &["e1", "e2", "e3"]).is_err());
    assert!(SpanningTree::from_edge_ids(&g, &["e1", "e3"]).is_err());
}

#[test]
fn trees_and_bananas() {
    let p = path(&[4, 6]);
    assert!(spanning_tree(&p).links().is_empty());
    assert!(fundamental_circuits(&p, &spanning_tree(&p)).is_empty());
    assert!(enumerate_circuits(&p, 10).unwrap().is_empty());
    assert_eq!(spanning_tree(&banana(2, 3)).links().len(), 1);
}

#[test]
fn loop_link_is_a_circuit_of_length_one() {
    let g = LabelledGraph::builder().vertices(["a", "b"]).edge("e1", "a", "b", 2).edge("e2", "b", "b", 3).build().unwrap();
    let cs = fundamental_circuits(&g, &spanning_tree(&g));
    assert_eq!(cs.len(), 1);
    assert_eq!(cs[0].edges(), [1]);
}

#[test]
fn k4_has_seven_circuits() {
    let k4 = complete(4);
    let cs = enumerate_circuits(&k4, 100).unwrap();
    assert_eq!(cs.len(), 7);
    assert_eq!(brute_force_circuits(&k4).len(), 7);
    assert!(matches!(enumerate_circuits(&k4, 6), Err(Error::CircuitCapExceeded { cap: 6 })));
}

#[test]
fn paper_graph_has_three_circuits() {
    assert_eq!(enumerate_circuits(&g_paper(), 100).unwrap().len(), 3);
}

#[test]
fn contraction_examples() {
    let c = contract_infinite(&g_inf());
    assert_eq!(c.graph.vertex_count(), 2);
    let labels: Vec<_> = c.graph.edges().iter().map(|e| e.label.to_string()).collect();
    assert_eq!(labels, ["2", "1", "4"]);

    let g = g_paper();
    let c = contract_infinite(&g);
    assert_eq!(c.graph, g);
    assert_eq!(c.vertex_map, [0, 1, 2, 3]);

    let bar = LabelledGraph::builder().vertices(["a", "b"]).edge("e", "a", "b", LabelInput::Infinite).build().unwrap();
    let c = contract_infinite(&bar);
    assert_eq!((c.graph.vertex_count(), c.graph.edge_count()), (1, 0));
    assert_eq!(c.vertex_map, [0, 0]);
}

/// Old vertices of a blow-up paired with their counterparts in a drawn graph.
fn old_pairs(b: &BlowupGraph, drawn: &LabelledGraph, names: &[&str]) -> Vec<(usize, usize)> {
    names.iter().enumerate().map(|(v, n)| (b.image_of(v), drawn.vertex_index(n).unwrap())).collect()
}

#[test]
fn blowups_of_the_infinite_example() {
    let g = g_inf();
    let first = nth_blowup(&g, 1);
    assert!(isomorphic_fixing(first.graph(), &g_inf_first(), &old_pairs(&first, &g_inf_first(), &["p", "q"])));
    let second = nth_blowup(&g, 2);
    assert!(isomorphic_fixing(second.graph(), &g_inf_second(), &old_pairs(&second, &g_inf_second(), &["p", "q"])));
    // swapping the old vertices breaks the correspondence
    assert!(!isomorphic_fixing(first.graph(), &g_inf_first(), &old_pairs(&first, &g_inf_first(), &["q", "p"])));
}

#[test]
fn total_blowup_of_the_finite_example() {
    let g = two_loops();
    let t = total_blowup(&g);
    let drawn = two_loops_total();
    assert!(isomorphic_fixing(t.graph(), &drawn, &old_pairs(&t, &drawn, &["p", "q"])));
}

#[test]
fn blowup_examples() {
    let five = nth_blowup(&path(&[5]), 2);
    assert_eq!(five.graph().edge_count(), 5);
    assert!(five.graph().edges().iter().all(|e| e.label.is_one()));
    let four = total_blowup(&path(&[4]));
    assert_eq!((four.new_vertices().len(), four.graph().edge_count()), (3, 4));
    let c = cycle(4);
    assert_eq!(*total_blowup(&c).graph(), c);
    assert_eq!(*nth_blowup(&c, 3).graph(), c);
    let zero = nth_blowup(&g_paper(), 0);
    assert_eq!(*zero.graph(), g_paper());
    assert_eq!(zero.old_vertices().len(), 4);
}

/// Each infinite edge replaced by two unit edges through a fresh midpoint.
fn split_infinite_edges(g: &LabelledGraph) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(v.clone());
    }
    for (j, e) in g.edges().iter().enumerate() {
        let (s, t) = (g.vertex_id(e.source).to_string(), g.vertex_id(e.target).to_string());
        if e.label.is_infinite() {
            let mid = format!("mid{j}");
            b.add_vertex(mid.clone());
            b.add_edge(format!("{}a", e.id), s, mid.clone(), 1);
            b.add_edge(format!("{}b", e.id), mid, t, 1);
        } else {
            b.add_edge(e.id.clone(), s, t, LabelInput::from(e.label));
        }
    }
    b.build().unwrap()
}

fn check_blowup_shape(g: &LabelledGraph, b: &BlowupGraph) {
    assert!(b.is_blowup_of(g));
    assert_eq!(b.old_vertices().len(), g.vertex_count());
    for v in b.new_vertices() {
        assert_eq!(b.graph().degree(v), 2, "new vertex {}", b.graph().vertex_id(v));
    }
    for (be, p) in b.paths().iter().enumerate() {
        let e = g.edge(be);
        assert_eq!(p.vertices[0], b.image_of(e.source));
        assert_eq!(*p.vertices.last().unwrap(), b.image_of(e.target));
        for &pe in &p.edges {
            assert_eq!(b.edge_provenance(pe), be);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn links_count_is_nullity(g in graph_strategy(7, 8, label_strategy(9, 2))) {
        let t = spanning_tree(&g);
        prop_assert_eq!(t.links().len(), g.edge_count() + 1 - g.vertex_count());
        prop_assert_eq!(t.links().len(), g.nullity());
        let tree = t.tree_edges();
        prop_assert_eq!(tree.len(), g.vertex_count() - 1);
        // the tree edges alone reconnect every vertex
        prop_assert!(SpanningTree::from_edges(&g, &tree).is_ok());
        prop_assert!(t.links().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fundamental_circuits_follow_their_links(g in graph_strategy(6, 6, label_strategy(9, 0))) {
        let t = spanning_tree(&g);
        let cs = fundamental_circuits(&g, &t);
        prop_assert_eq!(cs.len(), t.links().len());
        for (c, &link) in cs.iter().zip(t.links()) {
            prop_assert_eq!(c.sign_of(link), Some(1));
            prop_assert!(c.edges().iter().all(|&e| e == link || t.contains(e)));
        }
    }

    #[test]
    fn circuits_match_brute_force(g in graph_strategy(6, 6, label_strategy(5, 0))) {
        let found = enumerate_circuits(&g, 10_000).unwrap();
        let mut sets: Vec<Vec<usize>> = found.iter().map(|c| c.edge_set()).collect();
        sets.sort();
        prop_assert_eq!(sets, brute_force_circuits(&g));
        for c in &found {
            // canonical traversal: leaves its smallest vertex along the smaller edge
            let start = c.vertices()[0];
            prop_assert_eq!(start, *c.vertices().iter().min().unwrap());
            if c.len() > 2 {
                prop_assert!(c.edges()[0] < *c.edges().last().unwrap());
            }
        }
    }

    #[test]
    fn first_blowup_shape(g in graph_strategy(6, 6, label_strategy(8, 2)), levels in 1u32..4) {
        let mut b = BlowupGraph::identity(&g);
        for _ in 0..levels {
            b = first_blowup(&b);
        }
        prop_assert_eq!(b.level(), levels);
        check_blowup_shape(&g, &b);
        for (be, p) in b.paths().iter().enumerate() {
            let l = g.edge(be).label;
            let expected = match l.value() {
                None => 2 * levels as usize + 1,
                Some(m) => (m as usize).min(2 * levels as usize + 1),
            };
            prop_assert_eq!(p.edges.len(), expected);
        }
    }

    #[test]
    fn total_blowup_is_stable_iteration(g in finite_graphs(5, 5, 9)) {
        let t = total_blowup(&g);
        check_blowup_shape(&g, &t);
        prop_assert!(t.graph().edges().iter().all(|e| e.label.is_one()));
        let m = g.max_finite_label().unwrap_or(1);
        let n_star = (m as u32 - 1).div_ceil(2);
        let n = nth_blowup(&g, n_star);
        let fixed: Vec<_> = (0..g.vertex_count()).map(|v| (t.image_of(v), n.image_of(v))).collect();
        prop_assert!(isomorphic_fixing(t.graph(), n.graph(), &fixed));
        // one level short of n* some label is still above one
        if n_star > 0 {
            prop_assert!(nth_blowup(&g, n_star - 1).graph().edges().iter().any(|e| !e.label.is_one()));
        }
    }

    #[test]
    fn contraction_and_blowup(g in graph_strategy(5, 5, label_strategy(6, 3))) {
        let blown = first_blowup(&BlowupGraph::identity(&g));
        let c = contract_infinite(blown.graph());
        if !g.has_infinite_edges() {
            let other = first_blowup(&BlowupGraph::identity(&contract_infinite(&g).graph));
            prop_assert_eq!(&c.graph, other.graph());
        }
        // each infinite edge survives as a unit two-edge path
        let h = split_infinite_edges(&g);
        let hb = first_blowup(&BlowupGraph::identity(&h));
        let fixed: Vec<_> = (0..g.vertex_count())
            .map(|v| {
                let hv = h.vertex_index(g.vertex_id(v)).unwrap();
                (c.vertex_map[blown.image_of(v)], hb.image_of(hv))
            })
            .collect();
        prop_assert!(isomorphic_fixing(&c.graph, hb.graph(), &fixed));
        // contracting first merges more, yet both orders end circuit-coprime
        let other = first_blowup(&BlowupGraph::identity(&contract_infinite(&g).graph));
        prop_assert!(semifact::verdict::circuit_coprime_prime_forest(other.graph()).circuit_coprime);
        prop_assert!(semifact::verdict::circuit_coprime_prime_forest(&c.graph).circuit_coprime);
    }

    #[test]
    fn contraction_removes_infinite_edges(g in graph_strategy(6, 6, label_strategy(6, 4))) {
        let c = contract_infinite(&g);
        prop_assert!(!c.graph.has_infinite_edges());
        prop_assert_eq!(c.graph.edge_count(), g.edges().iter().filter(|e| !e.label.is_infinite()).count());
        for e in g.edges() {
            if e.label.is_infinite() {
                prop_assert_eq!(c.vertex_map[e.source], c.vertex_map[e.target]);
            } else {
                let ce = c.graph.edge(c.graph.edge_index(&e.id).unwrap());
                prop_assert_eq!((ce.source, ce.target), (c.vertex_map[e.source], c.vertex_map[e.target]));
            }
        }
    }
}
