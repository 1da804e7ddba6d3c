use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use functidim::formulas::{chartrand_bounds, hernando_feasible};
use functidim::graph::generators::{complement, cycle, random_connected};
use functidim::resolver::{is_resolving, metric_dimension_exact, twin_partition, Budget};
use functidim::{build_functigraph, Graph, VertexFunction};

fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9, 0.0f64..0.8, any::<u64>())
        .prop_map(|(n, p, seed)| random_connected(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap())
}

fn graph_with_function() -> impl Strategy<Value = (Graph, VertexFunction)> {
    connected_graph().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, n)).prop_map(|(g, images)| (g, VertexFunction::new(images).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_form_a_metric(g in connected_graph()) {
        let d = g.distances();
        let n = g.order();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), Some(0));
            for v in 0..n {
                let duv = d.get(u, v).unwrap();
                prop_assert_eq!(Some(duv), d.get(v, u));
                prop_assert_eq!(duv == 1, g.has_edge(u, v));
                for w in 0..n {
                    prop_assert!(duv <= d.get(u, w).unwrap() + d.get(w, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn functigraph_shape((g, f) in graph_with_function()) {
        let c = build_functigraph(&g, &f).unwrap();
        let n = g.order();
        prop_assert_eq!(c.graph().order(), 2 * n);
        prop_assert_eq!(c.graph().size(), 2 * g.size() + n);
        prop_assert!(c.graph().is_connected());
        for i in 0..n {
            prop_assert!(c.graph().has_edge(i, n + f.apply(i)));
        }
    }

    #[test]
    fn supersets_of_resolving_sets_resolve(g in connected_graph(), extra in any::<prop::sample::Index>()) {
        let r = metric_dimension_exact(&g, Budget::default()).unwrap();
        let d = g.distances();
        let mut bigger = r.witness.clone();
        bigger.push(extra.index(g.order()));
        prop_assert!(is_resolving(&d, &bigger).unwrap().is_resolving());
    }

    #[test]
    fn solver_respects_known_bounds(g in connected_graph()) {
        let r = metric_dimension_exact(&g, Budget::default()).unwrap();
        let twins = twin_partition(&g).unwrap();
        prop_assert!(twins.forced_lower_bound <= r.dimension);
        let d = g.diameter().unwrap();
        if d >= 2 {
            prop_assert!(chartrand_bounds(g.order(), d).unwrap().contains(r.dimension));
            prop_assert!(hernando_feasible(g.order(), d, r.dimension).unwrap());
        }
        // Nothing smaller resolves: drop each witness vertex in turn.
        let dm = g.distances();
        for i in 0..r.witness.len() {
            let mut smaller = r.witness.clone();
            smaller.remove(i);
            if !smaller.is_empty() {
                prop_assert!(!is_resolving(&dm, &smaller).unwrap().is_resolving());
            }
        }
    }

    #[test]
    fn graph_text_round_trip(g in connected_graph()) {
        let back = Graph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(&back, &g);
    }

    #[test]
    fn function_literal_round_trip(images in prop::collection::vec(0usize..7, 7)) {
        let f = VertexFunction::new(images).unwrap();
        prop_assert_eq!(VertexFunction::parse_literal(&f.to_literal()).unwrap(), f.clone());
        prop_assert_eq!(VertexFunction::parse_file(&f.to_file()).unwrap(), f);
    }

    #[test]
    fn complement_is_an_involution(g in connected_graph()) {
        prop_assert_eq!(complement(&complement(&g).unwrap()).unwrap(), g);
    }
}

#[test]
fn solver_is_deterministic() {
    let g = build_functigraph(&cycle(9).unwrap(), &VertexFunction::parse_literal("1,1,2,2,3,3,4,4,5").unwrap())
        .unwrap()
        .into_graph();
    let a = metric_dimension_exact(&g, Budget::default()).unwrap();
    let b = metric_dimension_exact(&g, Budget::default()).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.stats.nodes, b.stats.nodes);
}
