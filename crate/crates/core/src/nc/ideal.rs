use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::Bound;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{Field, Fp};
use super::normalize::{merge_terms, CertTerm, Rules, Source};
use super::poly::{Letter, NCPoly, Word, Q};
use super::presentation::Presentation;
use super::NcError;

pub const DEFAULT_MAX_DEGREE: usize = 6;
pub const DEFAULT_MAX_ROWS: usize = 300_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverConfig {
    pub max_degree: usize,
    /// Upper bound on the number of candidate rows `w₁·r·w₂` generated.
    pub max_rows: usize,
    /// Screen each degree modulo a prime before the exact computation.
    pub prefilter: bool,
}

impl Default for ProverConfig {
    fn default() -> Self {
        Self { max_degree: DEFAULT_MAX_DEGREE, max_rows: DEFAULT_MAX_ROWS, prefilter: true }
    }
}

/// `Σ coef · left · source · right`, valid at the stated degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub degree_bound: usize,
    pub terms: Vec<CertTerm>,
}

impl Certificate {
    pub fn evaluate(&self, p: &Presentation) -> NCPoly {
        let mut acc = NCPoly::zero();
        for t in &self.terms {
            acc = acc + t.evaluate(p);
        }
        acc
    }

    pub fn check(&self, p: &Presentation, query: &NCPoly) -> bool {
        &self.evaluate(p) == query
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Yes { certificate: Certificate },
    Unknown { degree: usize, reason: Option<String> },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Self::Yes { certificate } => Some(certificate),
            Self::Unknown { .. } => None,
        }
    }
}

type Row<F> = BTreeMap<Word, F>;

struct Pivot<F> {
    row: Row<F>,
    origin: usize,
    scale: F,
    /// `row = scale · origin_row − Σ h · pivot_j`.
    history: Vec<(usize, F)>,
}

/// Semi-echelon basis: every stored row is monic with a distinct leading
/// word.
struct Span<F> {
    pivots: Vec<Pivot<F>>,
    index: HashMap<Word, usize>,
    built: usize,
}

impl<F: Field> Span<F> {
    fn new() -> Self {
        Self { pivots: Vec::new(), index: HashMap::new(), built: 0 }
    }

    fn axpy(row: &mut Row<F>, c: &F, other: &Row<F>) {
        for (w, x) in other {
            let entry = row.entry(w.clone()).or_insert_with(F::zero);
            *entry = entry.sub(&c.mul(x));
            if entry.is_zero() {
                row.remove(w);
            }
        }
    }

    fn insert(&mut self, mut row: Row<F>, origin: usize) {
        let mut history = Vec::new();
        while let Some((w, c)) = row.iter().next_back() {
            let Some(&k) = self.index.get(w) else {
                let (w, c) = (w.clone(), c.clone());
                let inv = c.inv();
                for x in row.values_mut() {
                    *x = x.mul(&inv);
                }
                for (_, h) in history.iter_mut() {
                    *h = F::mul(h, &inv);
                }
                self.index.insert(w, self.pivots.len());
                self.pivots.push(Pivot { row, origin, scale: inv, history });
                return;
            };
            let c = c.clone();
            Self::axpy(&mut row, &c, &self.pivots[k].row);
            history.push((k, c));
        }
    }

    /// Full reduction in descending word order; linear in the argument.
    fn reduce(&self, mut row: Row<F>) -> (Row<F>, Vec<(usize, F)>) {
        let mut used = Vec::new();
        let mut bound: Option<Word> = None;
        loop {
            let next = match &bound {
                None => row.iter().next_back(),
                Some(b) => row.range((Bound::Unbounded, Bound::Excluded(b))).next_back(),
            };
            let Some((w, c)) = next else { break };
            let w = w.clone();
            if let Some(&k) = self.index.get(&w) {
                let c = c.clone();
                Self::axpy(&mut row, &c, &self.pivots[k].row);
                used.push((k, c));
            }
            bound = Some(w);
        }
        (row, used)
    }

    /// Coefficients on origin rows for `Σ λ_k pivot_k`.
    fn expand(&self, used: Vec<(usize, F)>) -> BTreeMap<usize, F> {
        let mut lambda: BTreeMap<usize, F> = BTreeMap::new();
        for (k, c) in used {
            let e = lambda.entry(k).or_insert_with(F::zero);
            *e = e.add(&c);
        }
        let mut origins: BTreeMap<usize, F> = BTreeMap::new();
        while let Some((k, l)) = lambda.pop_last() {
            if l.is_zero() {
                continue;
            }
            let p = &self.pivots[k];
            let e = origins.entry(p.origin).or_insert_with(F::zero);
            *e = e.add(&l.mul(&p.scale));
            for (j, h) in &p.history {
                let e = lambda.entry(*j).or_insert_with(F::zero);
                *e = e.sub(&l.mul(h));
            }
        }
        origins.retain(|_, c| !c.is_zero());
        origins
    }
}

fn to_row<F: Field>(p: &NCPoly) -> Option<Row<F>> {
    p.terms().map(|(w, c)| Some((w.clone(), F::from_q(c)?))).filter(|t| t.as_ref().is_none_or(|(_, c)| !c.is_zero())).collect()
}

struct Origin {
    left: Word,
    relation: usize,
    right: Word,
}

/// Decides bounded-degree membership in the two-sided ideal of a
/// presentation. Spans are cached across queries.
pub struct Prover<'a> {
    pres: &'a Presentation,
    rules: Rules,
    config: ProverConfig,
    alphabet: Vec<Letter>,
    generators: HashSet<Letter>,
    words: Vec<Vec<Word>>,
    relations: Vec<(usize, NCPoly, usize)>,
    origins: Vec<Origin>,
    rows: Vec<(usize, NCPoly)>,
    layers: usize,
    q: Span<Q>,
    fp: Option<Span<Fp>>,
}

/// Result of projecting a polynomial onto the complement of a span.
pub(crate) struct Projection {
    pub remainder: NCPoly,
    pub terms: Vec<CertTerm>,
}

impl<'a> Prover<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        Self::with_config(pres, ProverConfig::default())
    }

    pub fn with_config(pres: &'a Presentation, config: ProverConfig) -> Self {
        let rules = Rules::new(pres);
        let alphabet = rules.alphabet(&pres.generators);
        let relations = pres
            .relations
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let n = rules.normalize(&r.poly);
                (!n.is_zero()).then(|| (i, n, r.poly.degree()))
            })
            .collect();
        let generators = pres
            .generators
            .iter()
            .flat_map(|&g| [Letter::new(g), Letter { gen: g, star: true }])
            .filter(|l| !l.star || l.gen.is_selfadjoint_sort())
            .collect();
        Self {
            pres,
            rules,
            config,
            alphabet,
            generators,
            words: vec![vec![Word::one()]],
            relations,
            origins: Vec::new(),
            rows: Vec::new(),
            layers: 0,
            q: Span::new(),
            fp: config.prefilter.then(Span::new),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    pub fn config(&self) -> ProverConfig {
        self.config
    }

    /// Number of candidate rows generated so far.
    pub fn rows_generated(&self) -> usize {
        self.origins.len()
    }

    fn check_query(&self, p: &NCPoly, d: usize) -> Result<(), NcError> {
        if d > self.config.max_degree {
            return Err(NcError::DegreeTooHigh { degree: d, max: self.config.max_degree });
        }
        if let Some(l) = p.letters().find(|l| !self.generators.contains(l)) {
            return Err(NcError::ForeignGenerator(l.token()));
        }
        if p.degree() > d {
            return Err(NcError::QueryTooLarge { degree: p.degree(), bound: d });
        }
        Ok(())
    }

    fn words_of_len(&mut self, k: usize) -> &[Word] {
        let (alphabet, rules) = (&self.alphabet, &self.rules);
        while self.words.len() <= k {
            let last = self.words.last().expect("length zero is present");
            let next: Vec<Word> = last
                .iter()
                .flat_map(|w| {
                    let tail = w.letters().last().copied();
                    alphabet
                        .iter()
                        .filter(move |&&l| tail.is_none_or(|t| rules.may_follow(t, l)))
                        .map(move |&l| w.concat(&Word::letter(l)))
                })
                .collect();
            self.words.push(next);
        }
        &self.words[k]
    }

    /// Counts of normal words by length without enumerating them.
    fn word_counts(&self, up_to: usize) -> Vec<u128> {
        let n = self.alphabet.len();
        let mut counts = vec![1u128];
        let mut by_last = vec![1u128; n];
        for k in 1..=up_to {
            if k > 1 {
                by_last = (0..n)
                    .map(|b| {
                        (0..n)
                            .filter(|&a| self.rules.may_follow(self.alphabet[a], self.alphabet[b]))
                            .map(|a| by_last[a])
                            .sum()
                    })
                    .collect();
            }
            counts.push(by_last.iter().sum());
        }
        counts
    }

    fn layer_size(&self, d: usize) -> u128 {
        let counts = self.word_counts(d);
        self.relations
            .iter()
            .filter(|(_, _, deg)| *deg <= d)
            .map(|(_, _, deg)| {
                let t = d - deg;
                (0..=t).map(|a| counts[a] * counts[t - a]).sum::<u128>()
            })
            .sum()
    }

    /// Generates all rows of total degree `≤ d`.
    fn build_rows(&mut self, d: usize) -> Result<(), NcError> {
        while self.layers < d {
            let layer = self.layers + 1;
            let size = self.layer_size(layer);
            if self.origins.len() as u128 + size > self.config.max_rows as u128 {
                return Err(NcError::RowBudget { degree: layer, rows: self.origins.len() as u128 + size, max: self.config.max_rows });
            }
            for k in 0..=layer {
                self.words_of_len(k);
            }
            let mut jobs: Vec<(usize, &Word, &Word)> = Vec::new();
            for (ri, (_, _, deg)) in self.relations.iter().enumerate() {
                if *deg > layer {
                    continue;
                }
                let t = layer - deg;
                for a in 0..=t {
                    for w1 in &self.words[a] {
                        for w2 in &self.words[t - a] {
                            jobs.push((ri, w1, w2));
                        }
                    }
                }
            }
            let rules = &self.rules;
            let relations = &self.relations;
            let built: Vec<(Origin, NCPoly)> = jobs
                .par_iter()
                .map(|&(ri, w1, w2)| {
                    let (index, nf, _) = &relations[ri];
                    let row = rules.normalize(&nf.sandwich(w1, w2));
                    (Origin { left: w1.clone(), relation: *index, right: w2.clone() }, row)
                })
                .collect();
            for (origin, row) in built {
                let id = self.origins.len();
                self.origins.push(origin);
                if !row.is_zero() {
                    self.rows.push((id, row));
                }
            }
            self.layers = layer;
        }
        Ok(())
    }

    /// Rows are stored in layer order, so the spans grow by prefix.
    fn extend_spans(&mut self, d: usize, fp: bool) -> Result<(), NcError> {
        self.build_rows(d)?;
        let end = self.rows.partition_point(|(id, _)| {
            let o = &self.origins[*id];
            o.left.len() + o.right.len() + self.pres.relations[o.relation].poly.degree() <= d
        });
        if fp {
            if let Some(span) = self.fp.as_mut() {
                let mut ok = true;
                while span.built < end {
                    let (id, row) = &self.rows[span.built];
                    match to_row::<Fp>(row) {
                        Some(r) => span.insert(r, *id),
                        None => ok = false,
                    }
                    span.built += 1;
                }
                if !ok {
                    self.fp = None;
                }
            }
        } else {
            while self.q.built < end {
                let (id, row) = &self.rows[self.q.built];
                self.q.insert(to_row::<Q>(row).expect("rationals embed"), *id);
                self.q.built += 1;
            }
        }
        Ok(())
    }

    fn certificate_terms(&self, origins: BTreeMap<usize, Q>) -> Vec<CertTerm> {
        let mut terms = Vec::new();
        for (id, mu) in origins {
            let o = &self.origins[id];
            terms.push(CertTerm { left: o.left.clone(), source: Source::Relation(o.relation), right: o.right.clone(), coef: mu.clone() });
            let full = self.pres.relations[o.relation].poly.sandwich(&o.left, &o.right);
            let (_, trace) = self.rules.normalize_traced(&full);
            terms.extend(trace.into_iter().map(|mut t| {
                t.coef = -(t.coef * &mu);
                t
            }));
        }
        terms
    }

    /// Exact projection of `p` at degree `d`: `p = remainder + Σ terms`,
    /// with the remainder depending linearly on `p`.
    pub(crate) fn project(&mut self, p: &NCPoly, d: usize) -> Result<Projection, NcError> {
        self.check_query(p, d)?;
        self.project_unchecked(p, d)
    }

    fn project_unchecked(&mut self, p: &NCPoly, d: usize) -> Result<Projection, NcError> {
        let (nf, mut terms) = self.rules.normalize_traced(p);
        if nf.is_zero() {
            return Ok(Projection { remainder: nf, terms: merge_terms(terms) });
        }
        self.extend_spans(d, false)?;
        let (rem, used) = self.q.reduce(to_row::<Q>(&nf).expect("rationals embed"));
        terms.extend(self.certificate_terms(self.q.expand(used)));
        let mut remainder = NCPoly::zero();
        for (w, c) in rem {
            remainder.add_term(w, c);
        }
        Ok(Projection { remainder, terms: merge_terms(terms) })
    }

    fn fp_says_member(&mut self, nf: &NCPoly) -> Option<bool> {
        let span = self.fp.as_ref()?;
        let row = to_row::<Fp>(nf)?;
        Some(span.reduce(row).0.is_empty())
    }

    /// Iterative deepening from the degree of the normal form up to `d`.
    pub fn member(&mut self, p: &NCPoly, d: usize) -> Result<Membership, NcError> {
        self.check_query(p, d)?;
        let (nf, trace) = self.rules.normalize_traced(p);
        if nf.is_zero() {
            let certificate = Certificate { degree_bound: p.degree(), terms: merge_terms(trace) };
            return Ok(Membership::Yes { certificate });
        }
        for k in nf.degree().max(1)..=d {
            if self.config.prefilter && self.fp.is_some() {
                match self.extend_spans(k, true) {
                    Ok(()) => {}
                    Err(NcError::RowBudget { degree, rows, max }) => {
                        return Ok(Membership::Unknown { degree: d, reason: Some(budget_reason(degree, rows, max)) })
                    }
                    Err(e) => return Err(e),
                }
                if self.fp_says_member(&nf) == Some(false) {
                    continue;
                }
            }
            let proj = match self.project_unchecked(p, k) {
                Ok(proj) => proj,
                Err(NcError::RowBudget { degree, rows, max }) => {
                    return Ok(Membership::Unknown { degree: d, reason: Some(budget_reason(degree, rows, max)) })
                }
                Err(e) => return Err(e),
            };
            if proj.remainder.is_zero() {
                return Ok(Membership::Yes { certificate: Certificate { degree_bound: k, terms: proj.terms } });
            }
        }
        Ok(Membership::Unknown { degree: d, reason: None })
    }
}

fn budget_reason(degree: usize, rows: u128, max: usize) -> String {
    format!("row budget exhausted at degree {degree}: {rows} candidate rows exceed {max}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::poly::Generator;
    use crate::nc::presentation::Sort;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn u(i: u32, j: u32) -> NCPoly {
        NCPoly::gen(Generator::UV(i, j))
    }

    #[test]
    fn commutator_in_s2() {
        let p = Presentation::s_plus(labels(2), Sort::V);
        let mut prover = Prover::new(&p);
        let c = NCPoly::commutator(&u(0, 0), &u(1, 1));
        let m = prover.member(&c, 3).unwrap();
        let cert = m.certificate().expect("member at degree 3");
        assert!(cert.check(&p, &c));
    }

    #[test]
    fn zero_has_empty_certificate() {
        let p = Presentation::s_plus(labels(2), Sort::V);
        let m = Prover::new(&p).member(&NCPoly::zero(), 1).unwrap();
        assert_eq!(m.certificate().unwrap().terms, vec![]);
    }

    #[test]
    fn commutator_in_s4_is_unknown() {
        let p = Presentation::s_plus(labels(4), Sort::V);
        let c = NCPoly::commutator(&u(0, 0), &u(1, 1));
        let config = ProverConfig { max_rows: 20_000, ..ProverConfig::default() };
        let m = Prover::with_config(&p, config).member(&c, 6).unwrap();
        assert!(matches!(m, Membership::Unknown { degree: 6, .. }));
    }

    #[test]
    fn errors() {
        let p = Presentation::s_plus(labels(2), Sort::V);
        let mut prover = Prover::new(&p);
        assert!(matches!(prover.member(&u(0, 0), 7), Err(NcError::DegreeTooHigh { .. })));
        assert!(matches!(prover.member(&u(0, 5), 2), Err(NcError::ForeignGenerator(_))));
        let cube = &(&u(0, 0) * &u(1, 1)) * &u(0, 0);
        assert!(matches!(prover.member(&cube, 2), Err(NcError::QueryTooLarge { .. })));
    }

    #[test]
    fn exact_and_prefiltered_agree() {
        let p = Presentation::s_plus(labels(3), Sort::V);
        let queries = [
            NCPoly::commutator(&u(0, 0), &u(1, 1)),
            &(&u(0, 0) + &u(0, 1)) + &u(0, 2) - NCPoly::one(),
            &u(0, 0) * &u(1, 1),
        ];
        let mut a = Prover::new(&p);
        let mut b = Prover::with_config(&p, ProverConfig { prefilter: false, ..ProverConfig::default() });
        for x in &queries {
            let ma = a.member(x, 3).unwrap();
            let mb = b.member(x, 3).unwrap();
            assert_eq!(ma.is_yes(), mb.is_yes(), "{x}");
            if let Some(c) = ma.certificate() {
                assert!(c.check(&p, x));
            }
        }
    }

    #[test]
    fn adjoint_closure() {
        let h = crate::fixtures::directed_path();
        let p = Presentation::qaut(&h);
        let mut prover = Prover::new(&p);
        for r in &p.relations {
            let adj = r.poly.adjoint();
            let m = prover.member(&adj, r.poly.degree().max(1)).unwrap();
            assert!(m.certificate().is_some_and(|c| c.check(&p, &adj)), "{}", r.label);
        }
    }
}
