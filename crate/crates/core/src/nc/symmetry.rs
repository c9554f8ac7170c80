use serde::Serialize;

use super::poly::{Generator, Letter, NCPoly};
use super::presentation::Presentation;
use crate::aut::{enumerate_aut, AutError, BiPermutation, Method};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub order: usize,
    pub qaut_fixed: usize,
    pub cstar_fixed: usize,
    /// Automorphisms, in cycle notation, that move a relation set.
    pub failures: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.qaut_fixed == self.order && self.cstar_fixed == self.order
    }
}

/// Relabels generators by `(σ, τ)`.
pub fn relabel(g: &BiPermutation, x: Generator) -> Generator {
    let s = |i: u32| g.sigma()[i as usize] as u32;
    let t = |i: u32| g.tau()[i as usize] as u32;
    match x {
        Generator::UV(i, j) => Generator::UV(s(i), s(j)),
        Generator::UE(i, j) => Generator::UE(t(i), t(j)),
        Generator::P(v) => Generator::P(s(v)),
        Generator::S(e) => Generator::S(t(e)),
        Generator::SStar(e) => Generator::SStar(t(e)),
    }
}

fn relation_set(p: &Presentation, map: impl Fn(&NCPoly) -> NCPoly) -> Vec<NCPoly> {
    let mut out: Vec<NCPoly> = p.relations.iter().map(|r| map(&r.poly).monic()).collect();
    out.sort();
    out
}

fn preserved(p: &Presentation, g: &BiPermutation) -> bool {
    let base = relation_set(p, NCPoly::clone);
    let moved = relation_set(p, |r| r.map_letters(|l| Letter { gen: relabel(g, l.gen), star: l.star }));
    base == moved
}

/// Every classical automorphism permutes the relations of the quantum
/// automorphism and C*-algebra presentations.
pub fn presentation_symmetry_check(h: &Hypergraph, method: Method) -> Result<SymmetryReport, AutError> {
    let group = enumerate_aut(h, method)?;
    let qaut = Presentation::qaut(h);
    let cstar = Presentation::cstar(h);
    let mut report = SymmetryReport { order: group.order(), qaut_fixed: 0, cstar_fixed: 0, failures: Vec::new() };
    for g in group.elements() {
        let (a, b) = (preserved(&qaut, g), preserved(&cstar, g));
        report.qaut_fixed += usize::from(a);
        report.cstar_fixed += usize::from(b);
        if !(a && b) {
            report.failures.push(format!("σ = {}, τ = {}", g.sigma_cycles(h.vertices()), g.tau_cycles(h.edges())));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_are_symmetric() {
        for h in [fixtures::directed_cycle3(), fixtures::gamma22(), fixtures::parallel_edges(), fixtures::star3()] {
            assert!(presentation_symmetry_check(&h, Method::Backtrack).unwrap().passed());
        }
    }

    #[test]
    fn non_automorphism_moves_relations() {
        let h = fixtures::directed_path();
        let swap = BiPermutation::new(vec![1, 0, 2], vec![0, 1]).unwrap();
        assert!(!preserved(&Presentation::qaut(&h), &swap));
        let flip = BiPermutation::new(vec![1, 0], vec![0]).unwrap();
        assert!(preserved(&Presentation::qaut(&fixtures::single_directed_edge()), &flip));
    }
}
