//! Classical automorphisms `Aut(H) ⊆ S_V × S_E`.
//!
//! A pair `(σ, τ)` is an automorphism when `σ s(e) = s(τ e)` and
//! `σ r(e) = r(τ e)` for every edge. Two enumeration methods are provided:
//! exhaustive search over `S_V × S_E` and a pruned backtracking search. The
//! former serves as an oracle for the latter.

mod perm;
mod search;

pub use perm::BiPermutation;
pub use search::{enumerate_aut, InvarianceReport, check_transform_invariance, DEFAULT_BRUTE_CAP};

use std::collections::{HashSet, VecDeque};

use nalgebra::DMatrix;
use serde_json::json;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("permutation sizes ({sigma}, {tau}) do not match hypergraph ({n}, {m})")]
    LabelMismatch { sigma: usize, tau: usize, n: usize, m: usize },
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("brute force needs |V|!·|E|! = {size} pairs, above the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Backtrack,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Self::Brute),
            "backtrack" => Ok(Self::Backtrack),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

fn check_shape(h: &Hypergraph, g: &BiPermutation) -> Result<(), AutError> {
    if g.sigma().len() != h.n_vertices() || g.tau().len() != h.n_edges() {
        return Err(AutError::LabelMismatch {
            sigma: g.sigma().len(),
            tau: g.tau().len(),
            n: h.n_vertices(),
            m: h.n_edges(),
        });
    }
    Ok(())
}

/// Set-equation test `σ s(e) = s(τ e)`, `σ r(e) = r(τ e)`.
pub fn is_automorphism(h: &Hypergraph, g: &BiPermutation) -> Result<bool, AutError> {
    check_shape(h, g)?;
    Ok(failed_condition(h, g).is_none())
}

/// First violated condition, as a human-readable description.
pub fn failed_condition(h: &Hypergraph, g: &BiPermutation) -> Option<String> {
    for e in 0..h.n_edges() {
        let te = g.tau()[e];
        for (range, name) in [(false, "s"), (true, "r")] {
            let image: std::collections::BTreeSet<usize> = h.side(e, range).iter().map(|&v| g.sigma()[v]).collect();
            if &image != h.side(te, range) {
                return Some(format!(
                    "σ {name}({}) ≠ {name}(τ {}) = {name}({})",
                    h.edges()[e],
                    h.edges()[e],
                    h.edges()[te]
                ));
            }
        }
    }
    None
}

/// `(P_σ)_{ij} = δ_{i σ(j)}`.
pub fn permutation_matrix(images: &[usize]) -> DMatrix<i32> {
    let n = images.len();
    DMatrix::from_fn(n, n, |i, j| i32::from(i == images[j]))
}

/// Intertwiner test `A_s P_τ = P_σ A_s` and `A_r P_τ = P_σ A_r`.
pub fn is_automorphism_matrix(h: &Hypergraph, g: &BiPermutation) -> Result<bool, AutError> {
    check_shape(h, g)?;
    let inc = h.incidence();
    let (ps, pt) = (permutation_matrix(g.sigma()), permutation_matrix(g.tau()));
    Ok(&inc.a_s * &pt == &ps * &inc.a_s && &inc.a_r * &pt == &ps * &inc.a_r)
}

/// A finite set of automorphisms, sorted by image tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    elements: Vec<BiPermutation>,
}

impl AutGroup {
    pub fn from_elements(mut elements: Vec<BiPermutation>) -> Self {
        elements.sort();
        elements.dedup();
        Self { elements }
    }

    pub fn elements(&self) -> &[BiPermutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &BiPermutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Identity, closure under composition and inverses.
    pub fn check_axioms(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        let id = BiPermutation::identity(first.sigma().len(), first.tau().len());
        let set: HashSet<&BiPermutation> = self.elements.iter().collect();
        set.contains(&id)
            && self.elements.iter().all(|a| set.contains(&a.inverse()))
            && self.elements.iter().all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }

    /// Greedy generating set: scan elements in order and keep those not
    /// generated by the ones kept so far.
    pub fn generators(&self) -> Vec<BiPermutation> {
        let Some(first) = self.elements.first() else {
            return Vec::new();
        };
        let id = BiPermutation::identity(first.sigma().len(), first.tau().len());
        let mut gens: Vec<BiPermutation> = Vec::new();
        let mut span: HashSet<BiPermutation> = HashSet::from([id]);
        for g in &self.elements {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let mut queue: VecDeque<BiPermutation> = span.iter().cloned().collect();
            while let Some(x) = queue.pop_front() {
                for s in &gens {
                    let y = s.compose(&x);
                    if span.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }

    /// Image of the group under the dual: `(σ, τ) ↦ (τ, σ)`.
    pub fn swapped(&self) -> Self {
        Self::from_elements(self.elements.iter().map(BiPermutation::swapped).collect())
    }

    pub fn report(&self, h: &Hypergraph, with_elements: bool) -> serde_json::Value {
        let gen = |g: &BiPermutation| {
            json!({"sigma": g.sigma_cycles(h.vertices()), "tau": g.tau_cycles(h.edges())})
        };
        let mut out = json!({
            "order": self.order(),
            "generators": self.generators().iter().map(gen).collect::<Vec<_>>(),
        });
        if with_elements {
            out["elements"] = self
                .elements
                .iter()
                .map(|g| {
                    json!({
                        "sigma": g.sigma().iter().map(|&i| h.vertices()[i].clone()).collect::<Vec<_>>(),
                        "tau": g.tau().iter().map(|&i| h.edges()[i].clone()).collect::<Vec<_>>(),
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_is_automorphism() {
        for (_, h) in fixtures::all() {
            let id = BiPermutation::identity(h.n_vertices(), h.n_edges());
            assert!(is_automorphism(&h, &id).unwrap());
            assert!(is_automorphism_matrix(&h, &id).unwrap());
        }
    }

    #[test]
    fn cycle_rotation() {
        let h = fixtures::directed_cycle3();
        // a->b->c->a, edges (a,b),(b,c),(c,a)
        let rot = BiPermutation::new(vec![1, 2, 0], vec![1, 2, 0]).unwrap();
        assert!(is_automorphism(&h, &rot).unwrap());
        assert!(is_automorphism_matrix(&h, &rot).unwrap());
        let swap = BiPermutation::new(vec![1, 0, 2], vec![0, 1, 2]).unwrap();
        assert!(!is_automorphism(&h, &swap).unwrap());
        assert!(!is_automorphism_matrix(&h, &swap).unwrap());
    }

    #[test]
    fn gamma_swap() {
        let h = fixtures::gamma22();
        let g = BiPermutation::new(vec![1, 0], vec![1, 0]).unwrap();
        assert!(is_automorphism_matrix(&h, &g).unwrap());
    }

    #[test]
    fn shape_mismatch() {
        let h = fixtures::directed_cycle3();
        let g = BiPermutation::identity(2, 3);
        assert!(matches!(is_automorphism(&h, &g), Err(AutError::LabelMismatch { .. })));
    }

    #[test]
    fn permutation_matrix_convention() {
        // σ = (0 1 2): column j has its one in row σ(j).
        let p = permutation_matrix(&[1, 2, 0]);
        assert_eq!(p[(1, 0)], 1);
        assert_eq!(p[(2, 1)], 1);
        assert_eq!(p[(0, 2)], 1);
        // P_{σ₂σ₁} = P_{σ₂} P_{σ₁}
        let s1 = BiPermutation::new(vec![1, 2, 0], vec![]).unwrap();
        let s2 = BiPermutation::new(vec![1, 0, 2], vec![]).unwrap();
        let c = s2.compose(&s1);
        assert_eq!(permutation_matrix(c.sigma()), permutation_matrix(s2.sigma()) * permutation_matrix(s1.sigma()));
    }

    #[test]
    fn generators_generate() {
        let h = fixtures::cycle4_simple();
        let g = enumerate_aut(&h, Method::Backtrack).unwrap();
        assert_eq!(g.order(), 8);
        let gens = g.generators();
        assert!(gens.len() <= 3);
        assert!(g.check_axioms());
    }
}
