//! Finite directed hypergraphs.
//!
//! Vertices and edges are identified by string labels whose document order
//! fixes all internal indices. Source and range sets are stored as sorted
//! index sets.

mod props;
mod transform;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use props::{IncidencePair, PropertyReport};
pub use transform::Transform;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge label `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{vertex}` in edge `{edge}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("vertex `{vertex}` listed twice in a set of edge `{edge}`")]
    RepeatedMember { edge: String, vertex: String },
    #[error("label collision: `{0}` is both a vertex and an edge label")]
    LabelCollision(String),
    #[error("invalid builder arguments: {0}")]
    InvalidBuild(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// A hypergraph `(V, E, s, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<String>,
    src: Vec<BTreeSet<usize>>,
    rng: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    s: Vec<String>,
    r: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

impl Hypergraph {
    /// Builds a hypergraph from labels. Each edge is `(id, source, range)`.
    pub fn new<I, S>(vertices: Vec<String>, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (String, Vec<S>, Vec<S>)>,
        S: AsRef<str>,
    {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(HypergraphError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |edge: &str, set: &[S]| -> Result<BTreeSet<usize>, HypergraphError> {
            let mut out = BTreeSet::new();
            for label in set {
                let label = label.as_ref();
                let idx = vertices.iter().position(|v| v == label).ok_or_else(|| {
                    HypergraphError::UnknownVertex { edge: edge.to_string(), vertex: label.to_string() }
                })?;
                if !out.insert(idx) {
                    return Err(HypergraphError::RepeatedMember {
                        edge: edge.to_string(),
                        vertex: label.to_string(),
                    });
                }
            }
            Ok(out)
        };
        let mut labels = Vec::new();
        let mut src = Vec::new();
        let mut rng = Vec::new();
        let mut seen_edges = HashSet::new();
        for (id, s, r) in edges {
            if !seen_edges.insert(id.clone()) {
                return Err(HypergraphError::DuplicateEdge(id));
            }
            src.push(lookup(&id, &s)?);
            rng.push(lookup(&id, &r)?);
            labels.push(id);
        }
        Ok(Self { vertices, edges: labels, src, rng })
    }

    /// Builds a hypergraph from index sets; callers guarantee validity.
    pub(crate) fn from_parts(
        vertices: Vec<String>,
        edges: Vec<String>,
        src: Vec<BTreeSet<usize>>,
        rng: Vec<BTreeSet<usize>>,
    ) -> Self {
        debug_assert_eq!(edges.len(), src.len());
        debug_assert_eq!(edges.len(), rng.len());
        Self { vertices, edges, src, rng }
    }

    /// Parses the interchange document.
    pub fn parse(document: &str) -> Result<Self, HypergraphError> {
        let doc: Document =
            serde_json::from_str(document).map_err(|e| HypergraphError::Malformed(e.to_string()))?;
        Self::new(doc.vertices, doc.edges.into_iter().map(|e| (e.id, e.s, e.r)))
    }

    /// Interchange document value; sets are sorted by label.
    pub fn to_value(&self) -> serde_json::Value {
        let set = |s: &BTreeSet<usize>| {
            let mut labels: Vec<String> = s.iter().map(|&i| self.vertices[i].clone()).collect();
            labels.sort();
            labels
        };
        let doc = Document {
            vertices: self.vertices.clone(),
            edges: (0..self.edges.len())
                .map(|e| EdgeDoc { id: self.edges[e].clone(), s: set(&self.src[e]), r: set(&self.rng[e]) })
                .collect(),
        };
        serde_json::to_value(doc).expect("document serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("document serializes")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Source set of edge `e`.
    pub fn src(&self, e: usize) -> &BTreeSet<usize> {
        &self.src[e]
    }

    /// Range set of edge `e`.
    pub fn rng(&self, e: usize) -> &BTreeSet<usize> {
        &self.rng[e]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|v| v == label)
    }

    /// Edges whose source (`range = false`) or range set contains `v`.
    pub fn edges_containing(&self, v: usize, range: bool) -> impl Iterator<Item = usize> + '_ {
        let sets = if range { &self.rng } else { &self.src };
        sets.iter().enumerate().filter(move |(_, s)| s.contains(&v)).map(|(e, _)| e)
    }

    /// Source or range set of `e` depending on `range`.
    pub fn side(&self, e: usize, range: bool) -> &BTreeSet<usize> {
        if range {
            &self.rng[e]
        } else {
            &self.src[e]
        }
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge() {
        let h = Hypergraph::parse(r#"{"vertices":["a","b"],"edges":[{"id":"e","s":["a"],"r":["b"]}]}"#)
            .unwrap();
        assert_eq!(h.n_vertices(), 2);
        assert_eq!(h.n_edges(), 1);
        assert_eq!(h.src(0), &BTreeSet::from([0]));
        assert_eq!(h.rng(0), &BTreeSet::from([1]));
    }

    #[test]
    fn rejects_unknown_vertex() {
        let err = Hypergraph::parse(r#"{"vertices":["a","b"],"edges":[{"id":"e","s":["c"],"r":[]}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("unknown vertex"));
    }

    #[test]
    fn accepts_empty_edge() {
        let h = Hypergraph::parse(r#"{"vertices":["a"],"edges":[{"id":"e","s":[],"r":[]}]}"#).unwrap();
        assert!(h.src(0).is_empty() && h.rng(0).is_empty());
    }

    #[test]
    fn rejects_duplicates() {
        assert_eq!(
            Hypergraph::parse(r#"{"vertices":["a","a"],"edges":[]}"#),
            Err(HypergraphError::DuplicateVertex("a".into()))
        );
        assert_eq!(
            Hypergraph::parse(
                r#"{"vertices":["a"],"edges":[{"id":"e","s":[],"r":[]},{"id":"e","s":[],"r":[]}]}"#
            ),
            Err(HypergraphError::DuplicateEdge("e".into()))
        );
        assert!(matches!(
            Hypergraph::parse(r#"{"vertices":["a"],"edges":[{"id":"e","s":["a","a"],"r":[]}]}"#),
            Err(HypergraphError::RepeatedMember { .. })
        ));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(Hypergraph::parse("{"), Err(HypergraphError::Malformed(_))));
        assert!(matches!(
            Hypergraph::parse(r#"{"vertices":[],"edges":[],"extra":1}"#),
            Err(HypergraphError::Malformed(_))
        ));
    }

    #[test]
    fn serializes_sorted_sets_and_round_trips() {
        let h = Hypergraph::parse(
            r#"{"vertices":["z","a"],"edges":[{"id":"e","s":["z","a"],"r":["a"]}]}"#,
        )
        .unwrap();
        let v = h.to_value();
        assert_eq!(v["edges"][0]["s"], serde_json::json!(["a", "z"]));
        assert_eq!(Hypergraph::parse(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn empty_hypergraph() {
        let h = Hypergraph::parse(r#"{"vertices":[],"edges":[]}"#).unwrap();
        assert_eq!(h.n_vertices(), 0);
        assert_eq!(h.incidence().a_s.shape(), (0, 0));
    }
}
