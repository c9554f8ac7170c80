//! Small named hypergraphs used by tests, benches and the CLI.
//!
//! Every fixture has at most four vertices and four edges.

use crate::graph::{ClassicalGraph, MultiEdge};
use crate::hypergraph::Hypergraph;

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

fn directed(vs: &[&str], es: &[(&str, &str)]) -> Hypergraph {
    ClassicalGraph::Directed { vertices: labels(vs), edges: es.iter().map(|(a, b)| labels(&[a, b])).collect() }
        .encode()
        .expect("valid directed fixture")
}

fn simple(vs: &[&str], es: &[(&str, &str)]) -> Hypergraph {
    ClassicalGraph::Simple { vertices: labels(vs), edges: es.iter().map(|(a, b)| labels(&[a, b])).collect() }
        .encode()
        .expect("valid simple fixture")
}

fn multi(vs: &[&str], es: &[(&str, &str, &str)]) -> Hypergraph {
    ClassicalGraph::Multi {
        vertices: labels(vs),
        edges: es
            .iter()
            .map(|(id, s, r)| MultiEdge { id: id.to_string(), s: s.to_string(), r: r.to_string() })
            .collect(),
    }
    .encode()
    .expect("valid multigraph fixture")
}

fn hyper(vs: &[&str], es: &[(&str, &[&str], &[&str])]) -> Hypergraph {
    Hypergraph::new(labels(vs), es.iter().map(|(id, s, r)| (id.to_string(), s.to_vec(), r.to_vec())))
        .expect("valid hypergraph fixture")
}

pub fn empty() -> Hypergraph {
    hyper(&[], &[])
}

pub fn lone_vertex() -> Hypergraph {
    hyper(&["a"], &[])
}

/// One vertex and one edge with empty source and range.
pub fn empty_edge() -> Hypergraph {
    hyper(&["a"], &[("e", &[], &[])])
}

pub fn two_empty_edges() -> Hypergraph {
    hyper(&["a", "b"], &[("e", &[], &[]), ("f", &[], &[])])
}

/// `a -> b`.
pub fn single_directed_edge() -> Hypergraph {
    directed(&["a", "b"], &[("a", "b")])
}

/// `a -> b -> c`.
pub fn directed_path() -> Hypergraph {
    directed(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
}

pub fn directed_cycle3() -> Hypergraph {
    directed(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
}

pub fn directed_cycle4() -> Hypergraph {
    directed(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
}

pub fn directed_loop() -> Hypergraph {
    directed(&["a", "b"], &[("a", "a"), ("a", "b")])
}

/// `a -> b` plus the isolated vertex `c`.
pub fn isolated_vertex() -> Hypergraph {
    directed(&["a", "b", "c"], &[("a", "b")])
}

pub fn simple_edge() -> Hypergraph {
    simple(&["a", "b"], &[("a", "b")])
}

pub fn path3_simple() -> Hypergraph {
    simple(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
}

pub fn triangle() -> Hypergraph {
    simple(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
}

pub fn cycle4_simple() -> Hypergraph {
    simple(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
}

pub fn star3() -> Hypergraph {
    simple(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")])
}

/// Two parallel edges `a -> b`.
pub fn parallel_edges() -> Hypergraph {
    multi(&["a", "b"], &[("e", "a", "b"), ("f", "a", "b")])
}

pub fn multi_loops() -> Hypergraph {
    multi(&["a", "b"], &[("l1", "a", "a"), ("l2", "a", "a"), ("g", "a", "b")])
}

pub fn multi_mixed() -> Hypergraph {
    multi(&["a", "b"], &[("e", "a", "b"), ("f", "b", "a"), ("g", "a", "b")])
}

pub fn gamma22() -> Hypergraph {
    Hypergraph::gamma_nm(2, 2).expect("valid builder")
}

pub fn gamma23() -> Hypergraph {
    Hypergraph::gamma_nm(2, 3).expect("valid builder")
}

pub fn gamma32() -> Hypergraph {
    Hypergraph::gamma_nm(3, 2).expect("valid builder")
}

pub fn hyper_mixed() -> Hypergraph {
    hyper(
        &["a", "b", "c"],
        &[("e1", &["a", "b"], &["c"]), ("e2", &["c"], &["a", "b"]), ("e3", &[], &["a"])],
    )
}

pub fn hyper_burst() -> Hypergraph {
    hyper(&["a", "b", "c"], &[("in", &["a", "b", "c"], &[]), ("out", &[], &["a", "b", "c"])])
}

pub fn hyper_asym() -> Hypergraph {
    hyper(
        &["a", "b", "c", "d"],
        &[("e1", &["a"], &["b", "c"]), ("e2", &["b", "c"], &["d"]), ("e3", &["d"], &["a"]), ("e4", &[], &[])],
    )
}

pub fn complete1() -> Hypergraph {
    Hypergraph::complete(labels(&["a"])).expect("valid builder")
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("empty", empty()),
        ("lone_vertex", lone_vertex()),
        ("empty_edge", empty_edge()),
        ("two_empty_edges", two_empty_edges()),
        ("single_directed_edge", single_directed_edge()),
        ("directed_path", directed_path()),
        ("directed_cycle3", directed_cycle3()),
        ("directed_cycle4", directed_cycle4()),
        ("directed_loop", directed_loop()),
        ("isolated_vertex", isolated_vertex()),
        ("simple_edge", simple_edge()),
        ("path3_simple", path3_simple()),
        ("triangle", triangle()),
        ("cycle4_simple", cycle4_simple()),
        ("star3", star3()),
        ("parallel_edges", parallel_edges()),
        ("multi_loops", multi_loops()),
        ("multi_mixed", multi_mixed()),
        ("gamma22", gamma22()),
        ("gamma23", gamma23()),
        ("gamma32", gamma32()),
        ("hyper_mixed", hyper_mixed()),
        ("hyper_burst", hyper_burst()),
        ("hyper_asym", hyper_asym()),
        ("complete1", complete1()),
    ]
}

pub fn by_name(name: &str) -> Option<Hypergraph> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, h)| h)
}
