use std::collections::{BTreeSet, HashSet};

use nalgebra::DMatrix;
use serde::Serialize;

use super::Hypergraph;

/// Incidence matrices, rows indexed by vertices and columns by edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePair {
    pub a_s: DMatrix<i32>,
    pub a_r: DMatrix<i32>,
}

/// Structural predicates and degree counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub no_multi_edges: bool,
    pub undirected: bool,
    /// `None` when edge sizes disagree or there are no edges.
    pub k_uniform: Option<usize>,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
    pub isolated: Vec<String>,
    pub n_s: Vec<usize>,
    pub n_r: Vec<usize>,
}

impl Hypergraph {
    pub fn incidence(&self) -> IncidencePair {
        let (n, m) = (self.n_vertices(), self.n_edges());
        let a_s = DMatrix::from_fn(n, m, |v, e| i32::from(self.src(e).contains(&v)));
        let a_r = DMatrix::from_fn(n, m, |v, e| i32::from(self.rng(e).contains(&v)));
        IncidencePair { a_s, a_r }
    }

    /// Number of edges whose source set contains `v`.
    pub fn n_s(&self, v: usize) -> usize {
        self.edges_containing(v, false).count()
    }

    /// Number of edges whose range set contains `v`.
    pub fn n_r(&self, v: usize) -> usize {
        self.edges_containing(v, true).count()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.n_r(v) == 0
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.n_s(v) == 0
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = HashSet::new();
        (0..self.n_edges()).any(|e| !seen.insert((self.src(e), self.rng(e))))
    }

    pub fn is_undirected(&self) -> bool {
        (0..self.n_edges()).all(|e| self.src(e) == self.rng(e))
    }

    /// Vacuously true for edgeless hypergraphs.
    pub fn is_k_uniform(&self, k: usize) -> bool {
        (0..self.n_edges()).all(|e| self.src(e).len() == k && self.rng(e).len() == k)
    }

    /// True when every source and range set is all of `V`.
    pub fn is_gamma_shaped(&self) -> bool {
        let all: BTreeSet<usize> = (0..self.n_vertices()).collect();
        (0..self.n_edges()).all(|e| *self.src(e) == all && *self.rng(e) == all)
    }

    pub fn classify(&self) -> PropertyReport {
        let n = self.n_vertices();
        let n_s: Vec<usize> = (0..n).map(|v| self.n_s(v)).collect();
        let n_r: Vec<usize> = (0..n).map(|v| self.n_r(v)).collect();
        let pick = |f: &dyn Fn(usize) -> bool| -> Vec<String> {
            (0..n).filter(|&v| f(v)).map(|v| self.vertices()[v].clone()).collect()
        };
        let k_uniform = if self.n_edges() == 0 {
            None
        } else {
            Some(self.src(0).len()).filter(|&k| self.is_k_uniform(k))
        };
        PropertyReport {
            no_multi_edges: !self.has_multi_edges(),
            undirected: self.is_undirected(),
            k_uniform,
            sources: pick(&|v| n_r[v] == 0),
            sinks: pick(&|v| n_s[v] == 0),
            isolated: pick(&|v| n_r[v] == 0 && n_s[v] == 0),
            n_s,
            n_r,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn single_edge_incidence() {
        let h = fixtures::single_directed_edge();
        let inc = h.incidence();
        assert_eq!(inc.a_s.as_slice(), &[1, 0]);
        assert_eq!(inc.a_r.as_slice(), &[0, 1]);
    }

    #[test]
    fn gamma_incidence_is_all_ones() {
        let h = crate::hypergraph::Hypergraph::gamma_nm(2, 2).unwrap();
        let inc = h.incidence();
        assert!(inc.a_s.iter().all(|&x| x == 1));
        assert!(inc.a_r.iter().all(|&x| x == 1));
    }

    #[test]
    fn empty_edge_column_is_zero() {
        let h = fixtures::empty_edge();
        let inc = h.incidence();
        assert!(inc.a_s.column(0).iter().all(|&x| x == 0));
        assert!(inc.a_r.column(0).iter().all(|&x| x == 0));
    }

    #[test]
    fn classify_encodings() {
        let simple = fixtures::path3_simple().classify();
        assert!(simple.undirected && simple.no_multi_edges);
        assert_eq!(simple.k_uniform, Some(2));

        let multi = fixtures::parallel_edges().classify();
        assert_eq!(multi.k_uniform, Some(1));
        assert!(!multi.no_multi_edges);

        let iso = fixtures::isolated_vertex().classify();
        assert_eq!(iso.isolated, vec!["c".to_string()]);
    }

    #[test]
    fn isolated_is_sources_and_sinks() {
        for (_, h) in fixtures::all() {
            let p = h.classify();
            let both: Vec<_> = p.sources.iter().filter(|v| p.sinks.contains(v)).cloned().collect();
            assert_eq!(both, p.isolated);
            let inc = h.incidence();
            for v in 0..h.n_vertices() {
                assert_eq!(p.n_s[v] as i32, inc.a_s.row(v).sum());
                assert_eq!(p.n_r[v] as i32, inc.a_r.row(v).sum());
            }
        }
    }
}
