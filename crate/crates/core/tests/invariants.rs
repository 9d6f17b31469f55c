use circmyc::circular::{
    circular_chromatic_number, coloring_to_partition, d_field, verify_coloring, CertificateJson,
    KdColoring,
};
use circmyc::forest::{build_f_circle, RootLabel};
use circmyc::graph::{
    chromatic_number, complete_graph, cycle_graph, is_independent, neighborhood, read_edge_list,
    write_edge_list, Graph,
};
use circmyc::harness::property1_checks;
use circmyc::mycielski::{iterated_mycielskian, root_set, roots_at_level, twin_bijection_h};
use proptest::prelude::*;

#[test]
fn orders_and_roots_for_small_bases() {
    for n in 1..=3usize {
        let g = complete_graph(n).unwrap();
        for t in 0..=6u32 {
            let gt = iterated_mycielskian(&g, t);
            assert_eq!(gt.graph().order(), (1 << t) * (n + 1) - 1);
            assert_eq!(root_set(&gt).len(), (1 << t) - 1);
            for s in 1..=t {
                // one root per composition of s
                assert_eq!(roots_at_level(&gt, s).unwrap().len(), 1 << (s - 1));
            }
        }
    }
}

#[test]
fn level_t_roots_match_forest_vertices() {
    for t in 1..=8u32 {
        let gt = iterated_mycielskian(&complete_graph(2).unwrap(), t);
        let fc = build_f_circle(t).unwrap();
        let mut level: Vec<String> = roots_at_level(&gt, t)
            .unwrap()
            .iter()
            .filter(|&v| !gt.name(v).suffix.is_empty())
            .map(|v| gt.name(v).to_string())
            .collect();
        let mut forest: Vec<String> = fc.labels().iter().map(RootLabel::to_string).collect();
        level.sort();
        forest.sort();
        assert_eq!(level.len(), fc.order());
        assert_eq!(level, forest, "t={t}");
    }
}

#[test]
fn twin_map_is_a_bijection_onto_roots() {
    for t in 1..=6u32 {
        let gt = iterated_mycielskian(&complete_graph(3).unwrap(), t);
        let h = twin_bijection_h(&gt).unwrap();
        let images: std::collections::BTreeSet<_> = h.values().collect();
        assert_eq!(images.len(), h.len());
    }
}

#[test]
fn certificates_survive_serialization() {
    for (t, n) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let gt = iterated_mycielskian(&complete_graph(n).unwrap(), t);
        let cert = circular_chromatic_number(gt.graph()).unwrap();
        for check in property1_checks(&cert) {
            assert!(check.holds(), "{}", check.label);
        }
        let json = serde_json::to_string(&cert.to_json("g", gt.names())).unwrap();
        let back: CertificateJson = serde_json::from_str(&json).unwrap();
        let colors = gt.names().iter().map(|n| back.witness[n]).collect();
        let c = KdColoring::new(back.optimal.k, back.optimal.d, colors).unwrap();
        assert!(verify_coloring(gt.graph(), &c).unwrap());
    }
}

#[test]
fn odd_cycles() {
    for m in [3usize, 5, 7, 9] {
        let cert = circular_chromatic_number(&cycle_graph(m).unwrap()).unwrap();
        // C_{2l+1} has χ_c = (2l+1)/l
        assert_eq!(cert.ratio(), (m as u32, (m as u32 - 1) / 2));
    }
    let cert = circular_chromatic_number(&cycle_graph(8).unwrap()).unwrap();
    assert_eq!(cert.ratio(), (2, 1));
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p)
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_is_between_chi_minus_one_and_chi(g in arb_graph(8)) {
        let cert = circular_chromatic_number(&g).unwrap();
        prop_assert!(verify_coloring(&g, &cert.witness).unwrap());
        let chi = chromatic_number(&g) as u64;
        let (k, d) = (cert.optimal_k as u64, cert.optimal_d as u64);
        prop_assert!(k <= chi * d);
        if g.size() > 0 {
            prop_assert!((chi - 1) * d < k);
        }
    }

    #[test]
    fn d_fields_avoid_neighbors(g in arb_graph(8)) {
        let cert = circular_chromatic_number(&g).unwrap();
        prop_assume!(!cert.edgeless);
        let p = coloring_to_partition(&g, &cert.witness).unwrap();
        for v in g.vertices() {
            let field = d_field(&p, v).unwrap();
            let single = [v].into_iter().collect();
            prop_assert!(neighborhood(&g, &single).unwrap().is_disjoint(&field));
            prop_assert!(is_independent(&g, &p.window(p.class_of(v).unwrap() as i64, p.d())).unwrap());
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(10)) {
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        prop_assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
    }
}
