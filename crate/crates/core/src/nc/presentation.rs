use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::poly::{write_poly, Generator, Letter, NCPoly, Word};
use super::NcError;
use crate::graph::{ClassicalGraph, GraphKind};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Two magic unitaries intertwined by both incidence matrices.
    Qaut,
    /// Quantum permutation group on the vertex set.
    SPlusV,
    /// Quantum permutation group on the edge set.
    SPlusE,
    Bichon,
    Banica,
    /// Goswami–Hossain, in Bichon's sense.
    Gh,
    /// Hypergraph C*-algebra, equality relations only.
    CstarEqualities,
    FreeProduct,
}

impl Flavor {
    pub const ALL: [Flavor; 8] = [
        Self::Qaut,
        Self::SPlusV,
        Self::SPlusE,
        Self::Bichon,
        Self::Banica,
        Self::Gh,
        Self::CstarEqualities,
        Self::FreeProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Qaut => "qaut",
            Self::SPlusV => "s_plus_v",
            Self::SPlusE => "s_plus_e",
            Self::Bichon => "bichon",
            Self::Banica => "banica",
            Self::Gh => "gh",
            Self::CstarEqualities => "cstar_equalities",
            Self::FreeProduct => "free_product",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s_plus" => Ok(Self::SPlusV),
            "cstar" => Ok(Self::CstarEqualities),
            _ => Self::ALL
                .into_iter()
                .find(|f| f.name() == s)
                .ok_or_else(|| format!("unknown flavor `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sort {
    V,
    E,
}

/// A square magic unitary whose entries are `uV(i, j)` or `uE(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MagicBlock {
    pub sort: Sort,
    pub size: u32,
}

impl MagicBlock {
    pub fn entry(&self, i: u32, j: u32) -> Generator {
        match self.sort {
            Sort::V => Generator::UV(i, j),
            Sort::E => Generator::UE(i, j),
        }
    }

    /// Position of `g` in this block.
    pub fn position(&self, g: Generator) -> Option<(u32, u32)> {
        match (self.sort, g) {
            (Sort::V, Generator::UV(i, j)) | (Sort::E, Generator::UE(i, j)) if i < self.size && j < self.size => {
                Some((i, j))
            }
            _ => None,
        }
    }

    /// Distinct entries sharing a row or a column; their product vanishes
    /// in any C*-algebra where the block is magic.
    pub fn orthogonal(&self, a: Generator, b: Generator) -> bool {
        match (self.position(a), self.position(b)) {
            (Some((i, j)), Some((k, l))) => (i == k) != (j == l),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `g* − g`.
    SelfAdjoint(Letter),
    /// `g·g − g`.
    Idempotent(Letter),
    /// `a·b`.
    Orthogonal(Letter, Letter),
    RowSum,
    ColumnSum,
    Intertwiner,
    StarIntertwiner,
    Adjacency,
    Commutation,
    GhSameEndpoint,
    GhVanishing,
    GhSourceRange,
    PartialIsometry,
    Range,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub label: String,
    pub kind: RelationKind,
    pub poly: NCPoly,
}

/// Generators and relations `r = 0`, with the labels of the underlying
/// hypergraph for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub flavor: Flavor,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub generators: Vec<Generator>,
    pub magic: Vec<MagicBlock>,
    pub relations: Vec<Relation>,
    #[serde(default)]
    pub notes: Vec<String>,
}

fn u(sort: Sort, i: usize, j: usize) -> Generator {
    match sort {
        Sort::V => Generator::UV(i as u32, j as u32),
        Sort::E => Generator::UE(i as u32, j as u32),
    }
}

fn idx(i: usize) -> u32 {
    i as u32
}

impl Presentation {
    fn empty(flavor: Flavor, vertices: Vec<String>, edges: Vec<String>) -> Self {
        Self { flavor, vertices, edges, generators: Vec::new(), magic: Vec::new(), relations: Vec::new(), notes: Vec::new() }
    }

    fn push(&mut self, kind: RelationKind, label: String, poly: NCPoly) {
        if !poly.is_zero() {
            self.relations.push(Relation { label, kind, poly });
        }
    }

    fn labels(&self, sort: Sort) -> &[String] {
        match sort {
            Sort::V => &self.vertices,
            Sort::E => &self.edges,
        }
    }

    /// Magic unitary relations of an `n × n` block: idempotents, then
    /// self-adjointness, then row sums and column sums.
    fn add_magic(&mut self, sort: Sort, n: usize) {
        let block = MagicBlock { sort, size: idx(n) };
        self.magic.push(block);
        for i in 0..n {
            for j in 0..n {
                self.generators.push(u(sort, i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let g = u(sort, i, j);
                let label = format!("idempotent {}", self.gen_label(g));
                self.push(RelationKind::Idempotent(g.into()), label, &NCPoly::product_of([g, g]) - &NCPoly::gen(g));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let g = u(sort, i, j);
                let star = NCPoly::letter(Letter { gen: g, star: true });
                let label = format!("selfadjoint {}", self.gen_label(g));
                self.push(RelationKind::SelfAdjoint(g.into()), label, &star - &NCPoly::gen(g));
            }
        }
        let s = if sort == Sort::V { "uV" } else { "uE" };
        for i in 0..n {
            let label = format!("row_sum {s}[{},*]", self.labels(sort)[i]);
            self.push(RelationKind::RowSum, label, NCPoly::sum_of((0..n).map(|j| u(sort, i, j))) - NCPoly::one());
        }
        for j in 0..n {
            let label = format!("column_sum {s}[*,{}]", self.labels(sort)[j]);
            self.push(RelationKind::ColumnSum, label, NCPoly::sum_of((0..n).map(|i| u(sort, i, j))) - NCPoly::one());
        }
    }

    pub fn new(h: &Hypergraph, flavor: Flavor) -> Result<Self, NcError> {
        match flavor {
            Flavor::Qaut => Ok(Self::qaut(h)),
            Flavor::SPlusV => Ok(Self::s_plus(h.vertices().to_vec(), Sort::V)),
            Flavor::SPlusE => Ok(Self::s_plus(h.edges().to_vec(), Sort::E)),
            Flavor::Bichon => Self::bichon(h, true),
            Flavor::Banica => Self::bichon(h, false),
            Flavor::Gh => Self::gh(h),
            Flavor::CstarEqualities => Ok(Self::cstar(h)),
            Flavor::FreeProduct => Ok(Self::free_product(h)),
        }
    }

    /// `C(S_X⁺)` on the given labels, using `uV` or `uE` generators.
    pub fn s_plus(labels: Vec<String>, sort: Sort) -> Self {
        let n = labels.len();
        let (flavor, vertices, edges) = match sort {
            Sort::V => (Flavor::SPlusV, labels, Vec::new()),
            Sort::E => (Flavor::SPlusE, Vec::new(), labels),
        };
        let mut p = Self::empty(flavor, vertices, edges);
        p.add_magic(sort, n);
        p
    }

    pub fn free_product(h: &Hypergraph) -> Self {
        let mut p = Self::empty(Flavor::FreeProduct, h.vertices().to_vec(), h.edges().to_vec());
        p.add_magic(Sort::V, h.n_vertices());
        p.add_magic(Sort::E, h.n_edges());
        p
    }

    /// Magic unitaries `u_V`, `u_E` with `A_s u_E = u_V A_s`,
    /// `A_r u_E = u_V A_r` and the starred forms `A_s* u_V = u_E A_s*`,
    /// `A_r* u_V = u_E A_r*`, expanded entrywise.
    pub fn qaut(h: &Hypergraph) -> Self {
        let mut p = Self::free_product(h);
        p.flavor = Flavor::Qaut;
        let (n, m) = (h.n_vertices(), h.n_edges());
        for (range, name) in [(false, "s"), (true, "r")] {
            for v in 0..n {
                for e in 0..m {
                    let lhs = NCPoly::sum_of(h.edges_containing(v, range).map(|f| u(Sort::E, f, e)));
                    let rhs = NCPoly::sum_of(h.side(e, range).iter().map(|&w| u(Sort::V, v, w)));
                    let label = format!("A_{name} u_E = u_V A_{name} at ({}, {})", h.vertices()[v], h.edges()[e]);
                    p.push(RelationKind::Intertwiner, label, lhs - rhs);
                }
            }
        }
        for (range, name) in [(false, "s"), (true, "r")] {
            for e in 0..m {
                for v in 0..n {
                    let lhs = NCPoly::sum_of(h.side(e, range).iter().map(|&w| u(Sort::V, w, v)));
                    let rhs = NCPoly::sum_of(h.edges_containing(v, range).map(|f| u(Sort::E, e, f)));
                    let label = format!("A_{name}* u_V = u_E A_{name}* at ({}, {})", h.edges()[e], h.vertices()[v]);
                    p.push(RelationKind::StarIntertwiner, label, lhs - rhs);
                }
            }
        }
        p
    }

    fn bichon(h: &Hypergraph, commutation: bool) -> Result<Self, NcError> {
        let flavor = if commutation { Flavor::Bichon } else { Flavor::Banica };
        let graph = ClassicalGraph::decode(h)
            .filter(|g| matches!(g.kind(), GraphKind::Simple | GraphKind::Directed))
            .ok_or_else(|| NcError::Precondition(format!("{} requires a simple or directed graph", flavor.name())))?;
        let a = graph.adjacency().expect("simple and directed graphs have adjacency");
        let n = h.n_vertices();
        let mut p = Self::empty(flavor, h.vertices().to_vec(), h.edges().to_vec());
        p.add_magic(Sort::V, n);
        p.notes.push(format!("adjacency of the decoded {} graph", graph.kind()));
        for i in 0..n {
            for j in 0..n {
                let au = NCPoly::sum_of((0..n).filter(|&k| a[i][k]).map(|k| u(Sort::V, k, j)));
                let ua = NCPoly::sum_of((0..n).filter(|&k| a[k][j]).map(|k| u(Sort::V, i, k)));
                let label = format!("A u = u A at ({}, {})", h.vertices()[i], h.vertices()[j]);
                p.push(RelationKind::Adjacency, label, au - ua);
            }
        }
        if commutation {
            for (i, j) in adjacent_pairs(&a) {
                for (k, l) in adjacent_pairs(&a) {
                    let (x, y) = (u(Sort::V, i, k), u(Sort::V, j, l));
                    let label = format!("commute {} {}", p.gen_label(x), p.gen_label(y));
                    p.push(RelationKind::Commutation, label, NCPoly::commutator(&NCPoly::gen(x), &NCPoly::gen(y)));
                }
            }
        }
        Ok(p)
    }

    fn gh(h: &Hypergraph) -> Result<Self, NcError> {
        let report = h.classify();
        if !h.is_k_uniform(1) || !report.isolated.is_empty() {
            return Err(NcError::Precondition("multigraph without isolated vertices required".into()));
        }
        let (n, m) = (h.n_vertices(), h.n_edges());
        let src = |e: usize| *h.src(e).iter().next().expect("1-uniform");
        let rng = |e: usize| *h.rng(e).iter().next().expect("1-uniform");
        let inner = |v: usize| !h.is_source(v) && !h.is_sink(v);
        let mut p = Self::empty(Flavor::Gh, h.vertices().to_vec(), h.edges().to_vec());
        p.add_magic(Sort::E, m);
        p.notes.push(
            "s(e) and r(e) denote the unique source and range vertex of a 1-uniform edge".into(),
        );
        p.notes.push(
            "vanishing conditions follow the swapped form, which differs from the original reference".into(),
        );
        let sum_to = |e: usize, v: usize, range: bool| {
            NCPoly::sum_of((0..m).filter(|&f| if range { rng(f) == v } else { src(f) == v }).map(|f| u(Sort::E, e, f)))
        };
        for (range, name) in [(false, "s"), (true, "r")] {
            let end = |e: usize| if range { rng(e) } else { src(e) };
            for v in 0..n {
                for e1 in 0..m {
                    for e2 in e1 + 1..m {
                        if end(e1) == end(e2) {
                            let label = format!(
                                "{name}-sums at {} agree for {}, {}",
                                h.vertices()[v],
                                h.edges()[e1],
                                h.edges()[e2]
                            );
                            p.push(RelationKind::GhSameEndpoint, label, sum_to(e1, v, range) - sum_to(e2, v, range));
                        }
                    }
                }
            }
        }
        for e in 0..m {
            for f in 0..m {
                let by_src = inner(src(e)) && h.is_source(src(f));
                let by_rng = inner(rng(e)) && h.is_sink(rng(f));
                if by_src || by_rng {
                    let label = format!("vanishing uE[{},{}]", h.edges()[e], h.edges()[f]);
                    p.push(RelationKind::GhVanishing, label, NCPoly::gen(u(Sort::E, e, f)));
                }
            }
        }
        for v in (0..n).filter(|&v| inner(v)) {
            for e1 in 0..m {
                for e2 in 0..m {
                    if src(e1) == rng(e2) && inner(src(e1)) {
                        let label = format!(
                            "source/range sums at {} for {}, {}",
                            h.vertices()[v],
                            h.edges()[e1],
                            h.edges()[e2]
                        );
                        p.push(RelationKind::GhSourceRange, label, sum_to(e1, v, false) - sum_to(e2, v, true));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Projections `p_v`, partial isometries `s_e`, and
    /// `s_e* s_f = δ_{ef} Σ_{v ∈ r(e)} p_v`.
    pub fn cstar(h: &Hypergraph) -> Self {
        let (n, m) = (h.n_vertices(), h.n_edges());
        let mut p = Self::empty(Flavor::CstarEqualities, h.vertices().to_vec(), h.edges().to_vec());
        let pv = |v: usize| Generator::P(idx(v));
        let se = |e: usize| Generator::S(idx(e));
        let ss = |e: usize| Generator::SStar(idx(e));
        p.generators.extend((0..n).map(pv));
        p.generators.extend((0..m).map(se));
        p.generators.extend((0..m).map(ss));
        for v in 0..n {
            let label = format!("idempotent p[{}]", h.vertices()[v]);
            p.push(RelationKind::Idempotent(pv(v).into()), label, &NCPoly::product_of([pv(v), pv(v)]) - &NCPoly::gen(pv(v)));
        }
        for v in 0..n {
            let star = NCPoly::letter(Letter { gen: pv(v), star: true });
            let label = format!("selfadjoint p[{}]", h.vertices()[v]);
            p.push(RelationKind::SelfAdjoint(pv(v).into()), label, &star - &NCPoly::gen(pv(v)));
        }
        for v in 0..n {
            for w in (0..n).filter(|&w| w != v) {
                let label = format!("orthogonal p[{}] p[{}]", h.vertices()[v], h.vertices()[w]);
                p.push(
                    RelationKind::Orthogonal(pv(v).into(), pv(w).into()),
                    label,
                    NCPoly::product_of([pv(v), pv(w)]),
                );
            }
        }
        for e in 0..m {
            let label = format!("partial isometry s[{}]", h.edges()[e]);
            p.push(RelationKind::PartialIsometry, label, NCPoly::product_of([se(e), ss(e), se(e)]) - NCPoly::gen(se(e)));
            let label = format!("partial isometry s*[{}]", h.edges()[e]);
            p.push(RelationKind::PartialIsometry, label, NCPoly::product_of([ss(e), se(e), ss(e)]) - NCPoly::gen(ss(e)));
        }
        for e in 0..m {
            for f in 0..m {
                let mut rel = NCPoly::product_of([ss(e), se(f)]);
                if e == f {
                    rel = rel - NCPoly::sum_of(h.rng(e).iter().map(|&v| pv(v)));
                }
                let label = format!("s*[{}] s[{}] range", h.edges()[e], h.edges()[f]);
                p.push(RelationKind::Range, label, rel);
            }
        }
        p
    }

    /// Human-readable name of a generator.
    pub fn gen_label(&self, g: Generator) -> String {
        let v = |i: u32| self.vertices.get(i as usize).cloned().unwrap_or_else(|| format!("#{i}"));
        let e = |i: u32| self.edges.get(i as usize).cloned().unwrap_or_else(|| format!("#{i}"));
        match g {
            Generator::UV(i, j) => format!("uV[{},{}]", v(i), v(j)),
            Generator::UE(i, j) => format!("uE[{},{}]", e(i), e(j)),
            Generator::P(i) => format!("p[{}]", v(i)),
            Generator::S(i) => format!("s[{}]", e(i)),
            Generator::SStar(i) => format!("s*[{}]", e(i)),
        }
    }

    pub fn word_label(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let mut s = self.gen_label(l.gen);
                if l.star {
                    s.push('*');
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn poly_label(&self, p: &NCPoly) -> String {
        let mut s = String::new();
        write_poly(&mut s, p, |w| self.word_label(w)).expect("write to string");
        s
    }

    /// Every letter occurring in a relation belongs to a listed generator.
    pub fn validate(&self) -> Result<(), NcError> {
        let gens: std::collections::HashSet<Generator> = self.generators.iter().copied().collect();
        for r in &self.relations {
            if let Some(l) = r.poly.letters().find(|l| !gens.contains(&l.gen)) {
                return Err(NcError::ForeignGenerator(l.token()));
            }
        }
        Ok(())
    }

    pub fn has_generator(&self, g: Generator) -> bool {
        self.generators.contains(&g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "flavor {}", self.flavor.name()).unwrap();
        writeln!(out, "generators {}", self.generators.len()).unwrap();
        writeln!(out, "relations {}", self.relations.len()).unwrap();
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        for (i, r) in self.relations.iter().enumerate() {
            writeln!(out, "[{i}] {}: {} = 0", r.label, self.poly_label(&r.poly)).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, NcError> {
        let p: Self = serde_json::from_str(s).map_err(|e| NcError::Malformed(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    /// One relation per line, `.` for products and a `*` suffix for
    /// adjoints. Generator names use one-based indices.
    pub fn to_free_algebra(&self) -> String {
        let name = |g: Generator| match g {
            Generator::UV(i, j) => format!("uV_{}_{}", i + 1, j + 1),
            Generator::UE(i, j) => format!("uE_{}_{}", i + 1, j + 1),
            Generator::P(i) => format!("p_{}", i + 1),
            Generator::S(i) => format!("s_{}", i + 1),
            Generator::SStar(i) => format!("s_{}*", i + 1),
        };
        let mut out = String::new();
        writeln!(out, "# flavor {}", self.flavor.name()).unwrap();
        for &g in &self.generators {
            writeln!(out, "# {} = {}", name(g), self.gen_label(g)).unwrap();
        }
        for r in &self.relations {
            let mut line = String::new();
            write_poly(&mut line, &r.poly, |w| {
                w.letters()
                    .iter()
                    .map(|l| if l.star { format!("{}*", name(l.gen)) } else { name(l.gen) })
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .unwrap();
            writeln!(out, "{line}").unwrap();
        }
        out
    }
}

fn adjacent_pairs(a: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = a.len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| a[i][j]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s_plus_two_counts() {
        let p = Presentation::s_plus(vec!["1".into(), "2".into()], Sort::V);
        assert_eq!(p.relations.len(), 12);
        let count = |f: fn(&RelationKind) -> bool| p.relations.iter().filter(|r| f(&r.kind)).count();
        assert_eq!(count(|k| matches!(k, RelationKind::Idempotent(_))), 4);
        assert_eq!(count(|k| matches!(k, RelationKind::SelfAdjoint(_))), 4);
        assert_eq!(count(|k| matches!(k, RelationKind::RowSum | RelationKind::ColumnSum)), 4);
    }

    #[test]
    fn qaut_single_edge() {
        let h = fixtures::single_directed_edge();
        let p = Presentation::qaut(&h);
        // u_E is 1×1: its row sum says uE[e,e] = 1.
        let e = NCPoly::gen(Generator::UE(0, 0));
        assert!(p.relations.iter().any(|r| r.poly == &e - &NCPoly::one()));
        // A_s at (a, e): u_ee = u_aa.
        let aa = NCPoly::gen(Generator::UV(0, 0));
        assert!(p.relations.iter().any(|r| r.kind == RelationKind::Intertwiner && r.poly == &e - &aa));
        // A_s at (b, e): 0 = u_ba.
        let ba = NCPoly::gen(Generator::UV(1, 0));
        assert!(p.relations.iter().any(|r| r.poly == -&ba));
        p.validate().unwrap();
    }

    #[test]
    fn free_product_is_union() {
        let h = fixtures::directed_path();
        let fp = Presentation::free_product(&h);
        let sv = Presentation::s_plus(h.vertices().to_vec(), Sort::V);
        let se = Presentation::s_plus(h.edges().to_vec(), Sort::E);
        let union: Vec<_> = sv.relations.iter().chain(&se.relations).map(|r| r.poly.clone()).collect();
        let ours: Vec<_> = fp.relations.iter().map(|r| r.poly.clone()).collect();
        assert_eq!(ours, union);
    }

    #[test]
    fn gh_requires_no_isolated() {
        let err = Presentation::new(&fixtures::isolated_vertex(), Flavor::Gh).unwrap_err();
        assert!(err.to_string().contains("multigraph without isolated vertices required"));
        Presentation::new(&fixtures::parallel_edges(), Flavor::Gh).unwrap().validate().unwrap();
    }

    #[test]
    fn bichon_requires_graph() {
        assert!(Presentation::new(&fixtures::gamma22(), Flavor::Bichon).is_err());
        let p = Presentation::new(&fixtures::directed_cycle3(), Flavor::Bichon).unwrap();
        assert!(p.relations.iter().any(|r| r.kind == RelationKind::Commutation));
        let b = Presentation::new(&fixtures::directed_cycle3(), Flavor::Banica).unwrap();
        assert!(b.relations.iter().all(|r| r.kind != RelationKind::Commutation));
    }

    #[test]
    fn every_flavor_validates_and_round_trips() {
        for (_, h) in fixtures::all() {
            for f in Flavor::ALL {
                let Ok(p) = Presentation::new(&h, f) else { continue };
                p.validate().unwrap();
                assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
            }
        }
    }

    #[test]
    fn text_formats() {
        let p = Presentation::s_plus(vec!["1".into(), "2".into()], Sort::V);
        assert!(p.to_text().contains("row_sum uV[1,*]: uV[1,2] + uV[1,1] - 1 = 0"));
        let fa = p.to_free_algebra();
        assert!(fa.contains("uV_1_1.uV_1_1 - uV_1_1"));
        assert!(fa.contains("uV_1_1* - uV_1_1"));
    }
}
