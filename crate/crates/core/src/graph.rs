//! Simple, directed and multigraphs, and their hypergraph encodings.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Simple,
    Directed,
    Multi,
}

impl std::str::FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simple" => Ok(Self::Simple),
            "directed" => Ok(Self::Directed),
            "multi" => Ok(Self::Multi),
            other => Err(format!("unknown graph kind `{other}`")),
        }
    }
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Simple => "simple",
            Self::Directed => "directed",
            Self::Multi => "multi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiEdge {
    pub id: String,
    pub s: String,
    pub r: String,
}

/// A classical graph document. Simple edges list their two endpoints,
/// directed edges are `[tail, head]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClassicalGraph {
    Simple { vertices: Vec<String>, edges: Vec<Vec<String>> },
    Directed { vertices: Vec<String>, edges: Vec<Vec<String>> },
    Multi { vertices: Vec<String>, edges: Vec<MultiEdge> },
}

fn invalid(msg: impl Into<String>) -> HypergraphError {
    HypergraphError::InvalidGraph(msg.into())
}

impl ClassicalGraph {
    pub fn parse(document: &str) -> Result<Self, HypergraphError> {
        serde_json::from_str(document).map_err(|e| HypergraphError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn kind(&self) -> GraphKind {
        match self {
            Self::Simple { .. } => GraphKind::Simple,
            Self::Directed { .. } => GraphKind::Directed,
            Self::Multi { .. } => GraphKind::Multi,
        }
    }

    pub fn vertices(&self) -> &[String] {
        match self {
            Self::Simple { vertices, .. } | Self::Directed { vertices, .. } | Self::Multi { vertices, .. } => {
                vertices
            }
        }
    }

    /// Simple edges with endpoints in vertex document order.
    pub fn normalized(&self) -> Self {
        match self {
            Self::Simple { vertices, edges } => {
                let pos = |l: &String| vertices.iter().position(|v| v == l);
                let edges = edges
                    .iter()
                    .map(|e| {
                        let mut e = e.clone();
                        e.sort_by_key(|l| pos(l));
                        e
                    })
                    .collect();
                Self::Simple { vertices: vertices.clone(), edges }
            }
            other => other.clone(),
        }
    }

    /// Adjacency relation for simple and directed graphs, as vertex index
    /// pairs. Simple edges contribute both orientations.
    pub fn adjacency(&self) -> Option<Vec<Vec<bool>>> {
        let n = self.vertices().len();
        let pos = |l: &String| self.vertices().iter().position(|v| v == l);
        let mut a = vec![vec![false; n]; n];
        match self {
            Self::Simple { edges, .. } => {
                for e in edges {
                    let (i, j) = (pos(&e[0])?, pos(&e[1])?);
                    a[i][j] = true;
                    a[j][i] = true;
                }
            }
            Self::Directed { edges, .. } => {
                for e in edges {
                    a[pos(&e[0])?][pos(&e[1])?] = true;
                }
            }
            Self::Multi { .. } => return None,
        }
        Some(a)
    }

    /// Hypergraph encoding. Edge labels are `{v,w}` for simple edges and
    /// `(v,w)` for directed ones.
    pub fn encode(&self) -> Result<Hypergraph, HypergraphError> {
        let vertices = self.vertices().to_vec();
        let known: HashSet<&str> = vertices.iter().map(String::as_str).collect();
        let check_known = |l: &str| {
            if known.contains(l) {
                Ok(())
            } else {
                Err(invalid(format!("unknown vertex `{l}`")))
            }
        };
        match self.normalized() {
            Self::Simple { edges, .. } => {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for e in &edges {
                    if e.len() != 2 {
                        return Err(invalid(format!("simple edge must have 2 endpoints, got {}", e.len())));
                    }
                    if e[0] == e[1] {
                        return Err(invalid(format!("self-loop at `{}` in simple graph", e[0])));
                    }
                    check_known(&e[0])?;
                    check_known(&e[1])?;
                    if !seen.insert(e.clone()) {
                        return Err(invalid(format!("repeated simple edge {{{},{}}}", e[0], e[1])));
                    }
                    out.push((format!("{{{},{}}}", e[0], e[1]), e.clone(), e.clone()));
                }
                Hypergraph::new(vertices, out)
            }
            Self::Directed { edges, .. } => {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for e in &edges {
                    if e.len() != 2 {
                        return Err(invalid(format!("directed edge must be a pair, got {} entries", e.len())));
                    }
                    check_known(&e[0])?;
                    check_known(&e[1])?;
                    if !seen.insert(e.clone()) {
                        return Err(invalid(format!("repeated directed edge ({},{})", e[0], e[1])));
                    }
                    out.push((format!("({},{})", e[0], e[1]), vec![e[0].clone()], vec![e[1].clone()]));
                }
                Hypergraph::new(vertices, out)
            }
            Self::Multi { edges, .. } => Hypergraph::new(
                vertices,
                edges.into_iter().map(|e| (e.id, vec![e.s], vec![e.r])),
            ),
        }
    }

    /// The first kind, in the order simple, directed, multi, whose
    /// characterization `h` satisfies.
    pub fn decode(h: &Hypergraph) -> Option<Self> {
        [GraphKind::Simple, GraphKind::Directed, GraphKind::Multi]
            .into_iter()
            .find_map(|k| Self::decode_as(h, k))
    }

    pub fn decode_as(h: &Hypergraph, kind: GraphKind) -> Option<Self> {
        let vertices = h.vertices().to_vec();
        let first = |set: &std::collections::BTreeSet<usize>| vertices[*set.iter().next().unwrap()].clone();
        match kind {
            GraphKind::Simple => {
                if !(h.is_k_uniform(2) && h.is_undirected() && !h.has_multi_edges()) {
                    return None;
                }
                let edges = (0..h.n_edges())
                    .map(|e| h.src(e).iter().map(|&v| vertices[v].clone()).collect())
                    .collect();
                Some(Self::Simple { vertices, edges })
            }
            GraphKind::Directed => {
                if !(h.is_k_uniform(1) && !h.has_multi_edges()) {
                    return None;
                }
                let edges = (0..h.n_edges()).map(|e| vec![first(h.src(e)), first(h.rng(e))]).collect();
                Some(Self::Directed { vertices, edges })
            }
            GraphKind::Multi => {
                if !h.is_k_uniform(1) {
                    return None;
                }
                let edges = (0..h.n_edges())
                    .map(|e| MultiEdge { id: h.edges()[e].clone(), s: first(h.src(e)), r: first(h.rng(e)) })
                    .collect();
                Some(Self::Multi { vertices, edges })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(labels: &[&str]) -> Vec<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn simple_edge_encoding() {
        let g = ClassicalGraph::Simple { vertices: v(&["v", "w"]), edges: vec![v(&["w", "v"])] };
        let h = g.encode().unwrap();
        assert_eq!(h.edges(), &["{v,w}"]);
        assert_eq!(h.src(0), h.rng(0));
        assert_eq!(h.src(0).len(), 2);
        assert_eq!(ClassicalGraph::decode(&h), Some(g.normalized()));
    }

    #[test]
    fn directed_edge_encoding() {
        let g = ClassicalGraph::Directed { vertices: v(&["v", "w"]), edges: vec![v(&["v", "w"])] };
        let h = g.encode().unwrap();
        assert_eq!(h.src(0).iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(h.rng(0).iter().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(ClassicalGraph::decode(&h), Some(g));
    }

    #[test]
    fn multigraph_loop() {
        let g = ClassicalGraph::Multi {
            vertices: v(&["v"]),
            edges: vec![MultiEdge { id: "e".into(), s: "v".into(), r: "v".into() }],
        };
        let h = g.encode().unwrap();
        assert_eq!(h.src(0), h.rng(0));
        // A single loop has no parallel edges, so it decodes as directed.
        assert_eq!(ClassicalGraph::decode(&h).unwrap().kind(), GraphKind::Directed);
        assert_eq!(ClassicalGraph::decode_as(&h, GraphKind::Multi), Some(g));
    }

    #[test]
    fn parallel_edges_decode_as_multi() {
        let g = ClassicalGraph::Multi {
            vertices: v(&["a", "b"]),
            edges: vec![
                MultiEdge { id: "e".into(), s: "a".into(), r: "b".into() },
                MultiEdge { id: "f".into(), s: "a".into(), r: "b".into() },
            ],
        };
        assert_eq!(ClassicalGraph::decode(&g.encode().unwrap()), Some(g));
    }

    #[test]
    fn gamma_decodes_to_none() {
        assert_eq!(ClassicalGraph::decode(&Hypergraph::gamma_nm(2, 2).unwrap()), None);
    }

    #[test]
    fn simple_validation() {
        let bad = ClassicalGraph::Simple { vertices: v(&["a", "b"]), edges: vec![v(&["a"])] };
        assert!(bad.encode().is_err());
        let looped = ClassicalGraph::Simple { vertices: v(&["a"]), edges: vec![v(&["a", "a"])] };
        assert!(looped.encode().unwrap_err().to_string().contains("self-loop"));
    }

    #[test]
    fn document_format() {
        let g = ClassicalGraph::parse(r#"{"kind":"directed","vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert_eq!(g.kind(), GraphKind::Directed);
        assert_eq!(ClassicalGraph::parse(&g.to_json()).unwrap(), g);
    }
}
