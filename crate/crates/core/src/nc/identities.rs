use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ideal::{Certificate, Membership, Prover, ProverConfig};
use super::normalize::{merge_terms, CertTerm, Source};
use super::poly::{q, Generator, NCPoly, Word, Q};
use super::presentation::{Flavor, Presentation, RelationKind};
use super::NcError;
use crate::graph::{ClassicalGraph, GraphKind};
use crate::hypergraph::Hypergraph;

/// Subset enumeration is exponential; beyond this the identities that range
/// over subsets of `V` refuse to run.
pub const MAX_SUBSET_VERTICES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    ProductCommutes,
    InclusionExclusion,
    NoMultiedgeReduction,
    DirectedEdgeFormula,
    SimpleEdgeFormula,
    MultigraphIntertwiner,
    DegreeVanishing,
    GammaNmTriviality,
    BicSumOne,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        Self::ProductCommutes,
        Self::InclusionExclusion,
        Self::NoMultiedgeReduction,
        Self::DirectedEdgeFormula,
        Self::SimpleEdgeFormula,
        Self::MultigraphIntertwiner,
        Self::DegreeVanishing,
        Self::GammaNmTriviality,
        Self::BicSumOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ProductCommutes => "product_commutes",
            Self::InclusionExclusion => "inclusion_exclusion",
            Self::NoMultiedgeReduction => "no_multiedge_reduction",
            Self::DirectedEdgeFormula => "directed_edge_formula",
            Self::SimpleEdgeFormula => "simple_edge_formula",
            Self::MultigraphIntertwiner => "multigraph_intertwiner",
            Self::DegreeVanishing => "degree_vanishing",
            Self::GammaNmTriviality => "gamma_nm_triviality",
            Self::BicSumOne => "bic_sum_one",
        }
    }
}

impl std::str::FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub label: String,
    pub query: NCPoly,
    pub result: Membership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub degree_bound: usize,
    pub presentation: Presentation,
    pub instances: Vec<InstanceReport>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.result.is_yes())
    }

    pub fn count_yes(&self) -> usize {
        self.instances.iter().filter(|i| i.result.is_yes()).count()
    }
}

/// Cancels row and column sums: whenever every entry of a sum relation
/// occurs in `p` with one common coefficient, that multiple of the
/// relation is subtracted. Returns the rest and the subtracted multiples.
pub fn sum_rewrite(p: &NCPoly, pres: &Presentation) -> (NCPoly, Vec<CertTerm>) {
    let sums: Vec<(usize, &NCPoly)> = pres
        .relations
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r.kind, RelationKind::RowSum | RelationKind::ColumnSum))
        .map(|(i, r)| (i, &r.poly))
        .collect();
    let mut rest = p.clone();
    let mut terms = Vec::new();
    loop {
        let mut changed = false;
        for &(i, rel) in &sums {
            let linear: Vec<(&Word, &Q)> = rel.terms().filter(|(w, _)| w.len() == 1).collect();
            let Some(&(w0, k0)) = linear.first() else { continue };
            if linear.iter().any(|(_, k)| *k != k0) {
                continue;
            }
            let c = rest.coeff(w0);
            if c.is_zero() || linear.iter().any(|(w, _)| rest.coeff(w) != c) {
                continue;
            }
            let factor = c / k0;
            rest = &rest - &rel.scale(&factor);
            terms.push(CertTerm { left: Word::one(), source: Source::Relation(i), right: Word::one(), coef: factor });
            changed = true;
        }
        if !changed {
            return (rest, merge_terms(terms));
        }
    }
}

fn uv(v: usize, w: usize) -> Generator {
    Generator::UV(v as u32, w as u32)
}

fn ue(e: usize, f: usize) -> Generator {
    Generator::UE(e as u32, f as u32)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

struct Ctx<'h> {
    h: &'h Hypergraph,
}

impl Ctx<'_> {
    fn side(&self, range: bool) -> &'static str {
        if range {
            "r"
        } else {
            "s"
        }
    }

    fn set_label(&self, xs: &[usize]) -> String {
        let names: Vec<&str> = xs.iter().map(|&v| self.h.vertices()[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// `a_ve = Σ_{w ∈ side(e)} u_vw`.
    fn a(&self, v: usize, e: usize, range: bool) -> NCPoly {
        NCPoly::sum_of(self.h.side(e, range).iter().map(|&w| uv(v, w)))
    }

    fn product(&self, xs: &[usize], e: usize, range: bool) -> NCPoly {
        xs.iter().fold(NCPoly::one(), |acc, &v| &acc * &self.a(v, e, range))
    }

    /// Inclusion–exclusion expression for `Σ_{g : side(g) = X} u_ge`.
    fn inclusion_exclusion(&self, xs: &[usize], e: usize, range: bool) -> NCPoly {
        let n = self.h.n_vertices();
        let x: BTreeSet<usize> = xs.iter().copied().collect();
        let mut out = NCPoly::zero();
        for ys in subsets(n) {
            let y: BTreeSet<usize> = ys.iter().copied().collect();
            if !x.is_subset(&y) {
                continue;
            }
            let sign = if (y.len() - x.len()) % 2 == 0 { q(1) } else { q(-1) };
            out = out + self.product(&ys, e, range).scale(&sign);
        }
        out
    }
}

fn require(ok: bool, msg: &str) -> Result<(), NcError> {
    if ok {
        Ok(())
    } else {
        Err(NcError::Precondition(msg.into()))
    }
}

fn instances(h: &Hypergraph, id: IdentityId, pres: &Presentation) -> Result<Vec<(String, NCPoly)>, NcError> {
    let ctx = Ctx { h };
    let (n, m) = (h.n_vertices(), h.n_edges());
    let vl = |v: usize| h.vertices()[v].as_str();
    let el = |e: usize| h.edges()[e].as_str();
    let mut out = Vec::new();
    match id {
        IdentityId::ProductCommutes => {
            require(n <= MAX_SUBSET_VERTICES, "product_commutes enumerates subsets of at most 5 vertices")?;
            for range in [false, true] {
                for e in 0..m {
                    for xs in subsets(n).filter(|x| !x.is_empty()) {
                        let sorted = ctx.product(&xs, e, range);
                        let lhs = NCPoly::sum_of(
                            (0..m).filter(|&f| xs.iter().all(|v| h.side(f, range).contains(v))).map(|f| ue(f, e)),
                        );
                        let side = ctx.side(range);
                        out.push((format!("{side}: Σ_{{X ⊆ {side}(f)}} u_f{} = Π a, X = {}", el(e), ctx.set_label(&xs)), lhs - sorted.clone()));
                        for order in permutations(&xs).into_iter().skip(1) {
                            let names: Vec<&str> = order.iter().map(|&v| vl(v)).collect();
                            out.push((
                                format!("{side}: column {}, order {}", el(e), names.join(" ")),
                                ctx.product(&order, e, range) - sorted.clone(),
                            ));
                        }
                    }
                }
            }
        }
        IdentityId::InclusionExclusion => {
            require(n <= MAX_SUBSET_VERTICES, "inclusion_exclusion enumerates subsets of at most 5 vertices")?;
            for range in [false, true] {
                for e in 0..m {
                    for xs in subsets(n) {
                        let x: BTreeSet<usize> = xs.iter().copied().collect();
                        let lhs = NCPoly::sum_of((0..m).filter(|&f| h.side(f, range) == &x).map(|f| ue(f, e)));
                        let side = ctx.side(range);
                        out.push((
                            format!("{side}: column {}, X = {}", el(e), ctx.set_label(&xs)),
                            lhs - ctx.inclusion_exclusion(&xs, e, range),
                        ));
                    }
                }
            }
        }
        IdentityId::NoMultiedgeReduction => {
            require(!h.has_multi_edges(), "no_multiedge_reduction requires a hypergraph without multi-edges")?;
            require(n <= MAX_SUBSET_VERTICES, "no_multiedge_reduction enumerates subsets of at most 5 vertices")?;
            for e in 0..m {
                for f in 0..m {
                    let src: Vec<usize> = h.src(e).iter().copied().collect();
                    let rng: Vec<usize> = h.rng(e).iter().copied().collect();
                    let prod = &ctx.inclusion_exclusion(&src, f, false) * &ctx.inclusion_exclusion(&rng, f, true);
                    out.push((format!("uE[{},{}]", el(e), el(f)), NCPoly::gen(ue(e, f)) - prod));
                }
            }
        }
        IdentityId::DirectedEdgeFormula => {
            let g = ClassicalGraph::decode_as(h, GraphKind::Directed);
            require(g.is_some(), "directed_edge_formula requires a directed graph")?;
            let end = |e: usize, range: bool| *h.side(e, range).iter().next().expect("1-uniform");
            for e1 in 0..m {
                for e2 in 0..m {
                    let (v1, w1, v2, w2) = (end(e1, false), end(e1, true), end(e2, false), end(e2, true));
                    let lhs = NCPoly::gen(ue(e1, e2));
                    let a = NCPoly::gen(uv(v1, v2));
                    let b = NCPoly::gen(uv(w1, w2));
                    out.push((format!("uE[{},{}] = uV uV", el(e1), el(e2)), &lhs - &(&a * &b)));
                    out.push((format!("uE[{},{}] = uV uV reversed", el(e1), el(e2)), &lhs - &(&b * &a)));
                }
            }
        }
        IdentityId::SimpleEdgeFormula => {
            let g = ClassicalGraph::decode_as(h, GraphKind::Simple);
            require(g.is_some(), "simple_edge_formula requires a simple graph")?;
            let ends = |e: usize| -> [usize; 2] {
                let v: Vec<usize> = h.src(e).iter().copied().collect();
                [v[0], v[1]]
            };
            let u = |a: usize, b: usize| NCPoly::gen(uv(a, b));
            for e1 in 0..m {
                for e2 in 0..m {
                    let [a1, b1] = ends(e1);
                    let [a2, b2] = ends(e2);
                    for (v1, w1) in [(a1, b1), (b1, a1)] {
                        for (v2, w2) in [(a2, b2), (b2, a2)] {
                            let lhs = NCPoly::gen(ue(e1, e2));
                            let first = &(&u(v1, v2) * &u(w1, w2)) + &(&u(v1, w2) * &u(w1, v2));
                            let second = &(&u(v1, v2) * &u(w1, w2)) + &(&u(w1, v2) * &u(v1, w2));
                            let tag = format!("uE[{},{}], v1 = {}, v2 = {}", el(e1), el(e2), vl(v1), vl(v2));
                            out.push((format!("{tag}, first form"), &lhs - &first));
                            out.push((format!("{tag}, second form"), &lhs - &second));
                        }
                    }
                }
            }
        }
        IdentityId::MultigraphIntertwiner => {
            require(h.is_k_uniform(1), "multigraph_intertwiner requires a multigraph")?;
            let end = |e: usize, range: bool| *h.side(e, range).iter().next().expect("1-uniform");
            for range in [false, true] {
                for e in 0..m {
                    for v in 0..n {
                        let lhs = NCPoly::sum_of((0..m).filter(|&f| end(f, range) == v).map(|f| ue(e, f)));
                        let side = ctx.side(range);
                        out.push((
                            format!("{side}: Σ_{{{side}(f) = {}}} uE[{},f] = uV[{}({}),{}]", vl(v), el(e), side, el(e), vl(v)),
                            lhs - NCPoly::gen(uv(end(e, range), v)),
                        ));
                    }
                }
            }
        }
        IdentityId::DegreeVanishing => {
            for v in 0..n {
                for w in 0..n {
                    if h.n_s(v) != h.n_s(w) || h.n_r(v) != h.n_r(w) {
                        out.push((format!("uV[{},{}]", vl(v), vl(w)), NCPoly::gen(uv(v, w))));
                    }
                }
            }
        }
        IdentityId::GammaNmTriviality => {
            require(h.is_gamma_shaped(), "gamma_nm_triviality requires every source and range to be V")?;
            for r in &pres.relations {
                if matches!(r.kind, RelationKind::Intertwiner | RelationKind::StarIntertwiner) {
                    out.push((r.label.clone(), r.poly.clone()));
                }
            }
        }
        IdentityId::BicSumOne => {
            let adj = pres_adjacency(h)?;
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| adj[i][j]).collect();
            for &(i, j) in &pairs {
                let rows = pairs.iter().fold(NCPoly::zero(), |acc, &(k, l)| acc + NCPoly::product_of([uv(i, k), uv(j, l)]));
                let cols = pairs.iter().fold(NCPoly::zero(), |acc, &(k, l)| acc + NCPoly::product_of([uv(k, i), uv(l, j)]));
                out.push((format!("Σ uV[{},k] uV[{},l] = 1", vl(i), vl(j)), rows - NCPoly::one()));
                out.push((format!("Σ uV[k,{}] uV[l,{}] = 1", vl(i), vl(j)), cols - NCPoly::one()));
            }
        }
    }
    Ok(out)
}

fn pres_adjacency(h: &Hypergraph) -> Result<Vec<Vec<bool>>, NcError> {
    ClassicalGraph::decode(h)
        .filter(|g| matches!(g.kind(), GraphKind::Simple | GraphKind::Directed))
        .and_then(|g| g.adjacency())
        .ok_or_else(|| NcError::Precondition("bic_sum_one requires a simple or directed graph".into()))
}

pub fn verify_identity(h: &Hypergraph, id: IdentityId, degree: usize) -> Result<IdentityReport, NcError> {
    verify_identity_with(h, id, degree, ProverConfig::default())
}

pub fn verify_identity_with(
    h: &Hypergraph,
    id: IdentityId,
    degree: usize,
    config: ProverConfig,
) -> Result<IdentityReport, NcError> {
    if degree > config.max_degree {
        return Err(NcError::DegreeTooHigh { degree, max: config.max_degree });
    }
    let pres = match id {
        IdentityId::BicSumOne => Presentation::new(h, Flavor::Bichon)?,
        _ => Presentation::qaut(h),
    };
    let list = instances(h, id, &pres)?;
    let mut reports = Vec::with_capacity(list.len());
    let mut prover = Prover::with_config(&pres, config);
    for (label, query) in list {
        let result = if id == IdentityId::GammaNmTriviality {
            let (rest, terms) = sum_rewrite(&query, &pres);
            if rest.is_zero() {
                Membership::Yes { certificate: Certificate { degree_bound: query.degree(), terms } }
            } else {
                Membership::Unknown { degree, reason: Some(format!("sum rewriting leaves {rest}")) }
            }
        } else if query.degree() > degree {
            Membership::Unknown {
                degree,
                reason: Some(format!("query degree {} exceeds the bound", query.degree())),
            }
        } else {
            prover.member(&query, degree)?
        };
        reports.push(InstanceReport { label, query, result });
    }
    Ok(IdentityReport { identity: id, degree_bound: degree, presentation: pres, instances: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn check(h: &Hypergraph, id: IdentityId, d: usize) {
        let r = verify_identity(h, id, d).unwrap();
        assert!(!r.instances.is_empty() || id == IdentityId::DegreeVanishing);
        for i in &r.instances {
            let c = i.result.certificate().unwrap_or_else(|| panic!("{id} {}: {:?}", i.label, i.result));
            assert!(c.check(&r.presentation, &i.query), "{id} {}", i.label);
        }
    }

    #[test]
    fn sum_rewrite_gamma22() {
        let p = Presentation::qaut(&fixtures::gamma22());
        for r in p.relations.iter().filter(|r| r.kind == RelationKind::Intertwiner) {
            let (rest, terms) = sum_rewrite(&r.poly, &p);
            assert!(rest.is_zero());
            assert_eq!(terms.len(), 2);
        }
    }

    #[test]
    fn small_identities() {
        let edge = fixtures::single_directed_edge();
        check(&edge, IdentityId::ProductCommutes, 3);
        check(&edge, IdentityId::InclusionExclusion, 3);
        check(&edge, IdentityId::NoMultiedgeReduction, 6);
        check(&edge, IdentityId::DegreeVanishing, 3);
        check(&fixtures::parallel_edges(), IdentityId::MultigraphIntertwiner, 3);
        check(&fixtures::gamma22(), IdentityId::GammaNmTriviality, 2);
    }

    #[test]
    fn preconditions() {
        assert!(verify_identity(&fixtures::parallel_edges(), IdentityId::NoMultiedgeReduction, 4).is_err());
        assert!(verify_identity(&fixtures::triangle(), IdentityId::DirectedEdgeFormula, 4).is_err());
        assert!(verify_identity(&fixtures::directed_cycle3(), IdentityId::SimpleEdgeFormula, 4).is_err());
        assert!(verify_identity(&fixtures::directed_path(), IdentityId::GammaNmTriviality, 4).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
    }
}
