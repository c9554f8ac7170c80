use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ideal::{Prover, ProverConfig};
use super::poly::{Generator, Letter, NCPoly, Word, Q};
use super::presentation::{Presentation, RelationKind};
use super::tensor::{legwise_member, TensorMembership, TensorPoly};
use super::NcError;
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// A closed-form identity evaluated exactly.
    Exact { holds: bool },
    /// Legwise membership of `query`; `left` and `right` index the report's
    /// presentations.
    Tensor { left: usize, right: usize, query: TensorPoly, result: TensorMembership },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub section: String,
    pub label: String,
    pub outcome: Outcome,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            Outcome::Exact { holds } => *holds,
            Outcome::Tensor { result, .. } => result.is_yes(),
        }
    }

    fn exact(section: &str, label: String, holds: bool) -> Self {
        Self { section: section.into(), label, outcome: Outcome::Exact { holds } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub degree_bound: usize,
    pub presentations: Vec<Presentation>,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn count_passed(&self) -> usize {
        self.items.iter().filter(|i| i.passed()).count()
    }

    /// Items that are neither passed nor exact failures.
    pub fn unknown(&self) -> usize {
        self.items
            .iter()
            .filter(|i| matches!(&i.outcome, Outcome::Tensor { result: TensorMembership::Unknown { .. }, .. }))
            .count()
    }
}

fn delta(i: u32, j: u32) -> Q {
    if i == j {
        Q::one()
    } else {
        Q::zero()
    }
}

/// `ε(u_ij) = δ_ij` extended multiplicatively; `None` if `p` involves a
/// letter outside the magic unitaries.
pub fn counit(p: &NCPoly) -> Option<Q> {
    let mut total = Q::zero();
    for (w, c) in p.terms() {
        let mut x = c.clone();
        for l in w.letters() {
            match l.gen {
                Generator::UV(i, j) | Generator::UE(i, j) => x *= delta(i, j),
                _ => return None,
            }
        }
        total += x;
    }
    Some(total)
}

fn counit_word(w: &Word) -> Q {
    counit(&NCPoly::word(w.clone())).expect("right leg holds only magic entries")
}

fn with_star(gen: Generator, star: bool) -> Letter {
    Letter { gen, star }
}

/// `Δ(u_ij) = Σ_k u_ik ⊗ u_kj`, applied letterwise with stars kept on both
/// legs.
fn delta_letter(l: Letter, n: u32, m: u32) -> TensorPoly {
    let mut t = TensorPoly::zero();
    let (size, make): (u32, fn(u32, u32) -> Generator) = match l.gen {
        Generator::UV(..) => (n, Generator::UV),
        Generator::UE(..) => (m, Generator::UE),
        _ => unreachable!("the quantum automorphism presentation has only magic entries"),
    };
    let (Generator::UV(i, j) | Generator::UE(i, j)) = l.gen else { unreachable!() };
    for k in 0..size {
        t.add_term(
            Word::letter(with_star(make(i, k), l.star)),
            Word::letter(with_star(make(k, j), l.star)),
            Q::one(),
        );
    }
    t
}

/// Comultiplication compatibility of every relation of the quantum
/// automorphism presentation, and the counit on the same relations.
pub fn coproduct_check(h: &Hypergraph, degree: usize) -> Result<CheckReport, NcError> {
    coproduct_check_with(h, degree, ProverConfig::default())
}

pub fn coproduct_check_with(h: &Hypergraph, degree: usize, config: ProverConfig) -> Result<CheckReport, NcError> {
    check_degree(degree, config)?;
    let pres = Presentation::qaut(h);
    let (n, m) = (h.n_vertices() as u32, h.n_edges() as u32);
    let mut items = Vec::new();
    {
        let mut left = Prover::with_config(&pres, config);
        let mut right = Prover::with_config(&pres, config);
        for r in &pres.relations {
            let query = TensorPoly::substitute(&r.poly, &mut |l| delta_letter(l, n, m));
            let result = legwise_member(&query, &mut left, &mut right, degree)?;
            items.push(CheckItem {
                section: "coproduct".into(),
                label: r.label.clone(),
                outcome: Outcome::Tensor { left: 0, right: 0, query, result },
            });
        }
    }
    items.extend(counit_items(&pres));
    Ok(CheckReport { check: "coproduct".into(), degree_bound: degree, presentations: vec![pres], items })
}

fn counit_items(pres: &Presentation) -> Vec<CheckItem> {
    pres.relations
        .iter()
        .map(|r| CheckItem::exact("counit", r.label.clone(), counit(&r.poly).is_some_and(|x| x.is_zero())))
        .collect()
}

fn check_degree(degree: usize, config: ProverConfig) -> Result<(), NcError> {
    if degree > config.max_degree {
        return Err(NcError::DegreeTooHigh { degree, max: config.max_degree });
    }
    Ok(())
}

/// `α(p_v) = Σ_w p_w ⊗ u_wv`, `α(s_e) = Σ_f s_f ⊗ u_fe`. The map is given
/// by the two sizes and the magic unitary attached to each sort.
#[derive(Clone, Copy)]
struct Coaction {
    projections: u32,
    isometries: u32,
    /// Magic entry paired with `p`.
    p_entry: fn(u32, u32) -> Generator,
    /// Magic entry paired with `s`.
    s_entry: fn(u32, u32) -> Generator,
}

impl Coaction {
    fn apply(&self, l: Letter) -> TensorPoly {
        let mut t = TensorPoly::zero();
        let (count, left, right): (u32, Box<dyn Fn(u32) -> Letter>, Box<dyn Fn(u32) -> Letter>) = match l.gen {
            Generator::P(v) => (
                self.projections,
                Box::new(move |w| with_star(Generator::P(w), l.star)),
                Box::new(move |w| with_star((self.p_entry)(w, v), l.star)),
            ),
            Generator::S(e) => (
                self.isometries,
                Box::new(|f| Letter::new(Generator::S(f))),
                Box::new(move |f| Letter::new((self.s_entry)(f, e))),
            ),
            Generator::SStar(e) => (
                self.isometries,
                Box::new(|f| Letter::new(Generator::SStar(f))),
                Box::new(move |f| with_star((self.s_entry)(f, e), true)),
            ),
            _ => unreachable!("hypergraph C*-algebra letters only"),
        };
        for k in 0..count {
            t.add_term(Word::letter(left(k)), Word::letter(right(k)), Q::one());
        }
        t
    }

    fn image(&self, p: &NCPoly) -> TensorPoly {
        TensorPoly::substitute(p, &mut |l| self.apply(l))
    }
}

fn run(
    items: &mut Vec<CheckItem>,
    degree: usize,
    section: &str,
    label: String,
    query: TensorPoly,
    left: (usize, &mut Prover<'_>),
    right: (usize, &mut Prover<'_>),
) -> Result<(), NcError> {
    let result = legwise_member(&query, left.1, right.1, degree)?;
    items.push(CheckItem {
        section: section.into(),
        label,
        outcome: Outcome::Tensor { left: left.0, right: right.0, query, result },
    });
    Ok(())
}

fn entry_v(i: u32, j: u32) -> Generator {
    Generator::UV(i, j)
}

fn entry_e(i: u32, j: u32) -> Generator {
    Generator::UE(i, j)
}

pub fn coaction_check(h: &Hypergraph, degree: usize) -> Result<CheckReport, NcError> {
    coaction_check_with(h, degree, ProverConfig::default())
}

/// Sections: `relation_1` and `projections_isometries` substitute the
/// coaction into the C*-algebra relations; `range_derivation` shows that
/// Relation 1 under the coaction forces `A_r u_E = u_V A_r` modulo the free
/// product; `gamma_prime` repeats the first two sections for `Γ′` with the
/// roles of the two magic unitaries exchanged; `counit` checks
/// `(id ⊗ ε)α = id` on generators.
pub fn coaction_check_with(h: &Hypergraph, degree: usize, config: ProverConfig) -> Result<CheckReport, NcError> {
    check_degree(degree, config)?;
    let cstar = Presentation::cstar(h);
    let qaut = Presentation::qaut(h);
    let free = Presentation::free_product(h);
    let gp_graph = h.opposite().dual_unchecked();
    let gp = Presentation::cstar(&gp_graph);
    let (n, m) = (h.n_vertices() as u32, h.n_edges() as u32);
    let alpha = Coaction { projections: n, isometries: m, p_entry: entry_v, s_entry: entry_e };
    let alpha_gp = Coaction { projections: m, isometries: n, p_entry: entry_e, s_entry: entry_v };
    let mut items = Vec::new();

    {
        let mut lp = Prover::with_config(&cstar, config);
        let mut rq = Prover::with_config(&qaut, config);
        for r in &cstar.relations {
            let section = if r.kind == RelationKind::Range { "relation_1" } else { "projections_isometries" };
            run(&mut items, degree, section, r.label.clone(), alpha.image(&r.poly), (0, &mut lp), (1, &mut rq))?;
        }
        let mut rf = Prover::with_config(&free, config);
        for e in 0..m {
            let s = NCPoly::gen(Generator::S(e));
            let sa = alpha.image(&s);
            let mut z = &sa.adjoint() * &sa;
            for &v in h.rng(e as usize) {
                z = z - alpha.image(&NCPoly::gen(Generator::P(v as u32)));
            }
            for x in 0..n {
                let au = NCPoly::sum_of(h.edges_containing(x as usize, true).map(|f| Generator::UE(f as u32, e)));
                let ua = NCPoly::sum_of(h.rng(e as usize).iter().map(|&w| Generator::UV(x, w as u32)));
                z = z - TensorPoly::tensor(&NCPoly::gen(Generator::P(x)), &(au - ua));
            }
            let label = format!("A_r u_E = u_V A_r in column {}", h.edges()[e as usize]);
            run(&mut items, degree, "range_derivation", label, z, (0, &mut lp), (2, &mut rf))?;
        }
    }
    {
        let mut lp = Prover::with_config(&gp, config);
        let mut rq = Prover::with_config(&qaut, config);
        for r in &gp.relations {
            run(&mut items, degree, "gamma_prime", r.label.clone(), alpha_gp.image(&r.poly), (3, &mut lp), (1, &mut rq))?;
        }
    }
    for (pres, map, name) in [(&cstar, alpha, "counit"), (&gp, alpha_gp, "counit_gamma_prime")] {
        for &g in &pres.generators {
            let x = NCPoly::gen(g);
            let back = map.image(&x).contract_right(counit_word);
            items.push(CheckItem::exact(name, format!("(id ⊗ ε)α({})", pres.gen_label(g)), back == x));
        }
    }
    Ok(CheckReport {
        check: "coaction".into(),
        degree_bound: degree,
        presentations: vec![cstar, qaut, free, gp],
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn counit_kills_s_plus() {
        for n in 1..5 {
            let p = Presentation::s_plus((1..=n).map(|i| i.to_string()).collect(), super::super::Sort::V);
            assert!(p.relations.iter().all(|r| counit(&r.poly) == Some(Q::zero())));
        }
    }

    #[test]
    fn coproduct_single_edge() {
        let r = coproduct_check(&fixtures::single_directed_edge(), 4).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn coaction_single_edge() {
        let r = coaction_check(&fixtures::single_directed_edge(), 6).unwrap();
        for i in &r.items {
            assert!(i.passed(), "{} {}", i.section, i.label);
        }
    }

    #[test]
    fn coaction_certificates_evaluate() {
        let r = coaction_check(&fixtures::parallel_edges(), 4).unwrap();
        assert!(r.passed());
        for i in &r.items {
            if let Outcome::Tensor { left, right, query, result } = &i.outcome {
                let cert = result.certificate().unwrap();
                assert_eq!(&cert.evaluate(&r.presentations[*left], &r.presentations[*right]), query);
            }
        }
    }
}
