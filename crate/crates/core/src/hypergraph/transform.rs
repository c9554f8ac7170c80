use std::collections::BTreeSet;

use super::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Opposite,
    Dual,
    /// `dual(opposite(H))`, which equals `opposite(dual(H))`.
    GammaPrime,
}

impl std::str::FromStr for Transform {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "opposite" | "op" => Ok(Self::Opposite),
            "dual" => Ok(Self::Dual),
            "gamma_prime" | "gamma-prime" => Ok(Self::GammaPrime),
            other => Err(format!("unknown transform `{other}`")),
        }
    }
}

impl Hypergraph {
    pub fn transform(&self, which: Transform) -> Result<Self, HypergraphError> {
        match which {
            Transform::Opposite => Ok(self.opposite()),
            Transform::Dual => self.dual(),
            Transform::GammaPrime => self.gamma_prime(),
        }
    }

    pub fn opposite(&self) -> Self {
        Self::from_parts(
            self.vertices.clone(),
            self.edges.clone(),
            self.rng.clone(),
            self.src.clone(),
        )
    }

    /// Swaps the roles of vertices and edges; labels keep their text.
    pub fn dual(&self) -> Result<Self, HypergraphError> {
        if let Some(label) = self.vertices.iter().find(|v| self.edges.contains(v)) {
            return Err(HypergraphError::LabelCollision(label.clone()));
        }
        Ok(self.dual_unchecked())
    }

    /// Dual without the label-collision check. The result may carry a label
    /// on both sorts, which is harmless for index-based computations.
    pub fn dual_unchecked(&self) -> Self {
        let star = |sets: &[BTreeSet<usize>]| -> Vec<BTreeSet<usize>> {
            (0..self.n_vertices())
                .map(|v| (0..self.n_edges()).filter(|&e| sets[e].contains(&v)).collect())
                .collect()
        };
        Self::from_parts(self.edges.clone(), self.vertices.clone(), star(&self.src), star(&self.rng))
    }

    pub fn gamma_prime(&self) -> Result<Self, HypergraphError> {
        self.opposite().dual()
    }

    /// `n` vertices and `m` edges, each with source and range all of `V`.
    pub fn gamma_nm(n: usize, m: usize) -> Result<Self, HypergraphError> {
        if n == 0 || m == 0 {
            return Err(HypergraphError::InvalidBuild(format!("gamma_nm needs n, m >= 1, got ({n}, {m})")));
        }
        let all: BTreeSet<usize> = (0..n).collect();
        Ok(Self::from_parts(
            (1..=n).map(|i| format!("v{i}")).collect(),
            (1..=m).map(|i| format!("e{i}")).collect(),
            vec![all.clone(); m],
            vec![all; m],
        ))
    }

    /// One edge for each ordered pair of subsets `(X, Y)` of `vertices`.
    pub fn complete(vertices: Vec<String>) -> Result<Self, HypergraphError> {
        if vertices.is_empty() {
            return Err(HypergraphError::InvalidBuild("complete needs a nonempty vertex set".into()));
        }
        if vertices.len() > 8 {
            return Err(HypergraphError::InvalidBuild(format!(
                "complete on {} vertices would have 4^{} edges",
                vertices.len(),
                vertices.len()
            )));
        }
        let n = vertices.len();
        let subset = |mask: usize| -> BTreeSet<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
        let show = |set: &BTreeSet<usize>| -> String {
            set.iter().map(|&i| vertices[i].as_str()).collect::<Vec<_>>().join(",")
        };
        let mut edges = Vec::new();
        let mut src = Vec::new();
        let mut rng = Vec::new();
        for x in 0..1usize << n {
            for y in 0..1usize << n {
                let (sx, sy) = (subset(x), subset(y));
                edges.push(format!("[{}|{}]", show(&sx), show(&sy)));
                src.push(sx);
                rng.push(sy);
            }
        }
        // Edge labels contain brackets, so they never coincide with vertex
        // labels unless a caller chose such a vertex label on purpose.
        let h = Self::from_parts(vertices, edges, src, rng);
        if let Some(label) = h.vertices().iter().find(|v| h.edges().contains(v)) {
            return Err(HypergraphError::LabelCollision(label.clone()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(v) = h.vertices().iter().find(|v| !seen.insert(v.as_str())) {
            return Err(HypergraphError::DuplicateVertex(v.clone()));
        }
        Ok(h)
    }
}
