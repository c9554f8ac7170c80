use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::poly::{Generator, Letter, NCPoly, Word, Q};
use super::presentation::{MagicBlock, Presentation, RelationKind};

/// A basis element of the ideal: a listed relation, or the product of two
/// orthogonal entries of a declared magic block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Relation(usize),
    Orthogonal(Letter, Letter),
}

impl Source {
    pub fn poly(&self, p: &Presentation) -> NCPoly {
        match *self {
            Self::Relation(i) => p.relations[i].poly.clone(),
            Self::Orthogonal(a, b) => NCPoly::word(Word::from_letters([a, b])),
        }
    }
}

/// `coef · left · source · right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertTerm {
    pub left: Word,
    pub source: Source,
    pub right: Word,
    #[serde(with = "super::poly::q_str")]
    pub coef: Q,
}

impl CertTerm {
    pub fn evaluate(&self, p: &Presentation) -> NCPoly {
        self.source.poly(p).sandwich(&self.left, &self.right).scale(&self.coef)
    }
}

/// Sums coefficients of identical `(left, source, right)` triples and drops
/// the ones that cancel.
pub(crate) fn merge_terms(terms: impl IntoIterator<Item = CertTerm>) -> Vec<CertTerm> {
    let mut acc: BTreeMap<(Word, Source, Word), Q> = BTreeMap::new();
    for t in terms {
        *acc.entry((t.left, t.source, t.right)).or_insert_with(Q::zero) += t.coef;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((left, source, right), coef)| CertTerm { left, source, right, coef })
        .collect()
}

/// The length-two rewriting system of a presentation. Each rule carries the
/// factor by which its relation must be divided to become monic.
#[derive(Debug, Clone, Default)]
pub struct Rules {
    selfadjoint: HashMap<Generator, (usize, Q)>,
    idempotent: HashMap<Letter, (usize, Q)>,
    orthogonal: HashMap<(Letter, Letter), (usize, Q)>,
    magic: Vec<MagicBlock>,
}

/// `k` with `actual = k · expected`, if any.
fn proportional(actual: &NCPoly, expected: &NCPoly) -> Option<Q> {
    let (w, _) = expected.leading()?;
    let k = actual.coeff(w);
    (!k.is_zero() && &expected.scale(&k) == actual).then_some(k)
}

impl Rules {
    pub fn new(p: &Presentation) -> Self {
        let mut rules = Self { magic: p.magic.clone(), ..Self::default() };
        for (i, r) in p.relations.iter().enumerate() {
            match r.kind {
                RelationKind::SelfAdjoint(l) if l.gen.is_selfadjoint_sort() => {
                    let expected = NCPoly::letter(Letter { gen: l.gen, star: true }) - NCPoly::gen(l.gen);
                    if let Some(k) = proportional(&r.poly, &expected) {
                        rules.selfadjoint.entry(l.gen).or_insert((i, k));
                    }
                }
                RelationKind::Idempotent(l) => {
                    let expected = NCPoly::word(Word::from_letters([l, l])) - NCPoly::letter(l);
                    if let Some(k) = proportional(&r.poly, &expected) {
                        rules.idempotent.entry(l).or_insert((i, k));
                    }
                }
                RelationKind::Orthogonal(a, b) => {
                    let expected = NCPoly::word(Word::from_letters([a, b]));
                    if let Some(k) = proportional(&r.poly, &expected) {
                        rules.orthogonal.entry((a, b)).or_insert((i, k));
                    }
                }
                _ => {}
            }
        }
        rules
    }

    pub fn is_selfadjoint(&self, g: Generator) -> bool {
        self.selfadjoint.contains_key(&g)
    }

    /// Relations whose normal form is zero and which therefore add nothing
    /// to a span modulo the rules.
    pub fn is_rule(&self, index: usize) -> bool {
        self.selfadjoint.values().chain(self.idempotent.values()).chain(self.orthogonal.values()).any(|(i, _)| *i == index)
    }

    fn orthogonal_source(&self, a: Letter, b: Letter) -> Option<(Source, Q)> {
        if let Some((i, k)) = self.orthogonal.get(&(a, b)) {
            return Some((Source::Relation(*i), k.clone()));
        }
        (!a.star && !b.star && self.magic.iter().any(|m| m.orthogonal(a.gen, b.gen)))
            .then(|| (Source::Orthogonal(a, b), Q::one()))
    }

    /// Letters that can occur in normal words.
    pub fn alphabet(&self, generators: &[Generator]) -> Vec<Letter> {
        let mut out = Vec::new();
        for &g in generators {
            out.push(Letter::new(g));
            if g.is_selfadjoint_sort() && !self.is_selfadjoint(g) {
                out.push(Letter { gen: g, star: true });
            }
        }
        out.sort();
        out
    }

    /// Whether `b` may follow `a` in a normal word.
    pub fn may_follow(&self, a: Letter, b: Letter) -> bool {
        !(a == b && self.idempotent.contains_key(&a)) && self.orthogonal_source(a, b).is_none()
    }

    /// Normal form of `coef · w`, recording each rewrite. `None` means zero.
    pub fn nf_word(&self, w: &Word, coef: &Q, mut trace: Option<&mut Vec<CertTerm>>) -> Option<Word> {
        let letters = w.letters();
        let mut stack: SmallVec<[Letter; 6]> = SmallVec::new();
        let mut record = |left: &[Letter], source: Source, i: usize, k: &Q| {
            if let Some(t) = trace.as_deref_mut() {
                t.push(CertTerm {
                    left: Word::from_letters(left.iter().copied()),
                    source,
                    right: Word::from_letters(letters[i + 1..].iter().copied()),
                    coef: coef / k,
                });
            }
        };
        for (i, &l0) in letters.iter().enumerate() {
            let mut l = l0;
            if l.star {
                if let Some((r, k)) = self.selfadjoint.get(&l.gen) {
                    record(&stack, Source::Relation(*r), i, k);
                    l.star = false;
                }
            }
            if let Some(&top) = stack.last() {
                let below = &stack[..stack.len() - 1];
                if top == l {
                    if let Some((r, k)) = self.idempotent.get(&l) {
                        record(below, Source::Relation(*r), i, k);
                        continue;
                    }
                }
                if let Some((source, k)) = self.orthogonal_source(top, l) {
                    record(below, source, i, &k);
                    return None;
                }
            }
            stack.push(l);
        }
        Some(Word(stack))
    }

    pub fn normalize(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            if let Some(n) = self.nf_word(w, c, None) {
                out.add_term(n, c.clone());
            }
        }
        out
    }

    /// `(nf, trace)` with `p = nf + Σ trace`.
    pub fn normalize_traced(&self, p: &NCPoly) -> (NCPoly, Vec<CertTerm>) {
        let mut out = NCPoly::zero();
        let mut trace = Vec::new();
        for (w, c) in p.terms() {
            if let Some(n) = self.nf_word(w, c, Some(&mut trace)) {
                out.add_term(n, c.clone());
            }
        }
        (out, trace)
    }
}

pub fn normalize(p: &NCPoly, pres: &Presentation) -> NCPoly {
    Rules::new(pres).normalize(p)
}

pub fn normalize_traced(p: &NCPoly, pres: &Presentation) -> (NCPoly, Vec<CertTerm>) {
    Rules::new(pres).normalize_traced(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::presentation::Sort;
    use proptest::prelude::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn u(i: u32, j: u32) -> Letter {
        Letter::new(Generator::UV(i, j))
    }

    fn w(ls: &[Letter]) -> NCPoly {
        NCPoly::word(Word::from_letters(ls.iter().copied()))
    }

    #[test]
    fn row_orthogonality() {
        let p = Presentation::s_plus(labels(2), Sort::V);
        assert!(normalize(&w(&[u(0, 0), u(0, 1)]), &p).is_zero());
        assert!(normalize(&w(&[u(0, 0), u(1, 0)]), &p).is_zero());
    }

    #[test]
    fn selfadjoint_idempotent() {
        let p = Presentation::s_plus(labels(2), Sort::V);
        let star = Letter { gen: Generator::UV(0, 0), star: true };
        assert_eq!(normalize(&w(&[star, u(0, 0), u(0, 0)]), &p), w(&[u(0, 0)]));
    }

    #[test]
    fn unrelated_entries_untouched() {
        let p = Presentation::s_plus(labels(3), Sort::V);
        let x = w(&[u(0, 0), u(1, 1), u(0, 0)]);
        assert_eq!(normalize(&x, &p), x);
    }

    #[test]
    fn cstar_rules() {
        let h = crate::fixtures::single_directed_edge();
        let p = Presentation::cstar(&h);
        let pv = |i| Letter::new(Generator::P(i));
        assert!(normalize(&w(&[pv(0), pv(1)]), &p).is_zero());
        assert_eq!(normalize(&w(&[pv(1), pv(1)]), &p), w(&[pv(1)]));
        let s = Letter::new(Generator::S(0));
        assert_eq!(normalize(&w(&[s, s]), &p), w(&[s, s]));
    }

    fn letters3() -> impl Strategy<Value = Letter> {
        (0u32..3, 0u32..3, any::<bool>()).prop_map(|(i, j, star)| Letter { gen: Generator::UV(i, j), star })
    }

    fn poly3() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((prop::collection::vec(letters3(), 0..5), -3i64..4), 0..5).prop_map(|ts| {
            let mut p = NCPoly::zero();
            for (ls, c) in ts {
                p.add_term(Word::from_letters(ls), crate::nc::q(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn idempotent_and_degree_nonincreasing(x in poly3()) {
            let p = Presentation::s_plus(labels(3), Sort::V);
            let n = normalize(&x, &p);
            prop_assert_eq!(normalize(&n, &p), n.clone());
            prop_assert!(n.degree() <= x.degree());
        }

        #[test]
        fn trace_reproduces_difference(x in poly3()) {
            let p = Presentation::s_plus(labels(3), Sort::V);
            let (n, trace) = normalize_traced(&x, &p);
            let mut sum = n;
            for t in &trace {
                sum = sum + t.evaluate(&p);
            }
            prop_assert_eq!(sum, x);
        }
    }
}
