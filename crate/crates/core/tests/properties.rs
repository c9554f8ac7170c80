use proptest::prelude::*;

use hypersym::aut::{check_transform_invariance, enumerate_aut};
use hypersym::nc::{q, Flavor, Generator, NCPoly, Prover, ProverConfig, Sort, Word};
use hypersym::witness::{check_rep, cstar_perm_rep, nonclassical_witness, perm_rep, search_magic_rep, SearchOptions};
use hypersym::{ClassicalGraph, Hypergraph, Method, Presentation};

fn vertex_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Hypergraphs with up to 4 vertices and 3 edges, sources and ranges given
/// as bitmasks.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((0u8..(1 << n), 0u8..(1 << n)), 0..=3).prop_map(move |edges| {
            let vs = vertex_labels(n);
            let set = |mask: u8| -> Vec<String> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i].clone()).collect() };
            let es: Vec<(String, Vec<String>, Vec<String>)> =
                edges.iter().enumerate().map(|(k, &(s, r))| (format!("e{k}"), set(s), set(r))).collect();
            Hypergraph::new(vs.clone(), es).expect("valid random hypergraph")
        })
    })
}

fn directed_graph() -> impl Strategy<Value = ClassicalGraph> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::btree_set((0..n, 0..n), 0..=5).prop_map(move |pairs| ClassicalGraph::Directed {
            vertices: vertex_labels(n),
            edges: pairs.into_iter().map(|(a, b)| vec![format!("v{a}"), format!("v{b}")]).collect(),
        })
    })
}

fn simple_graph() -> impl Strategy<Value = ClassicalGraph> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::btree_set((0..n, 0..n).prop_filter("no loops", |(a, b)| a < b), 0..=4).prop_map(move |pairs| {
            ClassicalGraph::Simple {
                vertices: vertex_labels(n),
                edges: pairs.into_iter().map(|(a, b)| vec![format!("v{a}"), format!("v{b}")]).collect(),
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn document_round_trip(h in hypergraph()) {
        prop_assert_eq!(Hypergraph::parse(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn dual_is_an_involution(h in hypergraph()) {
        let d = h.dual_unchecked();
        prop_assert_eq!(&d.dual_unchecked(), &h);
        prop_assert_eq!(d.incidence().a_s, h.incidence().a_s.transpose());
        prop_assert_eq!(d.incidence().a_r, h.incidence().a_r.transpose());
    }

    #[test]
    fn search_methods_agree(h in hypergraph()) {
        let a = enumerate_aut(&h, Method::Brute).unwrap();
        let b = enumerate_aut(&h, Method::Backtrack).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
        prop_assert!(b.check_axioms());
        prop_assert!(check_transform_invariance(&h, Method::Backtrack).unwrap().passed());
    }

    #[test]
    fn directed_round_trip(g in directed_graph()) {
        let h = g.encode().unwrap();
        prop_assert!(h.is_k_uniform(1) && !h.has_multi_edges());
        prop_assert_eq!(ClassicalGraph::decode_as(&h, g.kind()), Some(g.normalized()));
    }

    #[test]
    fn simple_round_trip(g in simple_graph()) {
        let h = g.encode().unwrap();
        prop_assert!(h.is_undirected() && !h.has_multi_edges());
        prop_assert_eq!(ClassicalGraph::decode(&h), Some(g.normalized()));
    }

    #[test]
    fn classical_points_are_exact(h in hypergraph()) {
        let qaut = Presentation::qaut(&h);
        let cstar = Presentation::new(&h, Flavor::CstarEqualities).unwrap();
        for g in enumerate_aut(&h, Method::Backtrack).unwrap().elements() {
            prop_assert_eq!(check_rep(&perm_rep(&h, g).unwrap(), &qaut).unwrap().max_relation_residual, 0.0);
            prop_assert_eq!(check_rep(&cstar_perm_rep(&h, g).unwrap(), &cstar).unwrap().max_relation_residual, 0.0);
        }
    }

    #[test]
    fn commutator_norm_formula(theta in 0.01f64..1.56, extra in 0usize..3) {
        let h = Hypergraph::gamma_nm(4 + extra, 1 + extra).unwrap();
        let r = nonclassical_witness(&h, theta).unwrap();
        prop_assert!(r.max_relation_residual <= 1e-12);
        let want = (theta.sin() * theta.cos()).abs();
        match r.noncommutativity {
            Some(c) => prop_assert!((c.norm - want).abs() <= 1e-12),
            None => prop_assert!(want <= 10.0 * r.rep.tolerance),
        }
    }

    #[test]
    fn search_respects_tolerance(h in hypergraph(), seed in 0u64..1000) {
        let opts = SearchOptions { seed, restarts: 1, max_iters: 300, ..SearchOptions::default() };
        if let Some(r) = search_magic_rep(&h, 1, &opts) {
            prop_assert!(r.max_relation_residual <= r.rep.tolerance);
        }
    }
}

fn u(i: u32, j: u32) -> Word {
    Word::letter(Generator::UV(i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random combinations `Σ c · w · r · w'` of relations are recognised
    /// and their certificates evaluate back to the query.
    #[test]
    fn ideal_elements_are_members(
        picks in prop::collection::vec((0usize..64, 0u32..3, 0u32..3, 0u32..3, 0u32..3, -3i64..=3), 1..4)
    ) {
        let p = Presentation::s_plus(vertex_labels(3), Sort::V);
        let mut query = NCPoly::zero();
        for (r, a, b, c, d, k) in picks {
            let rel = &p.relations[r % p.relations.len()].poly;
            let left = if a == b { Word::one() } else { u(a, b) };
            let right = if c == d { Word::one() } else { u(c, d) };
            query = query + rel.sandwich(&left, &right).scale(&q(k));
        }
        let mut prover = Prover::with_config(&p, ProverConfig { max_degree: 4, ..ProverConfig::default() });
        let m = prover.member(&query, 4).unwrap();
        let cert = m.certificate().expect("ideal element is a member");
        prop_assert!(cert.check(&p, &query));
    }
}
