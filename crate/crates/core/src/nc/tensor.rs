use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ideal::Prover;
use super::normalize::CertTerm;
use super::poly::{Letter, NCPoly, Word, Q};
use super::presentation::Presentation;
use super::NcError;

/// Element of `A ⊗ B` in the basis of word pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Q>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(Word::one(), Word::one(), Q::one());
        t
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &NCPoly, b: &NCPoly) -> Self {
        let mut t = Self::zero();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                t.add_term(x.clone(), y.clone(), c * d);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Q)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut t = Self::zero();
        for ((a, b), x) in &self.terms {
            t.add_term(a.clone(), b.clone(), x * c);
        }
        t
    }

    /// `(a ⊗ b)* = a* ⊗ b*`.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zero();
        for ((a, b), c) in &self.terms {
            t.add_term(a.adjoint(), b.adjoint(), c.clone());
        }
        t
    }

    /// Largest word length on each leg.
    pub fn leg_degrees(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(x, y), (a, b)| (x.max(a.len()), y.max(b.len())))
    }

    /// Image of `p` under the algebra map given on letters.
    pub fn substitute(p: &NCPoly, f: &mut impl FnMut(Letter) -> TensorPoly) -> Self {
        let mut out = Self::zero();
        for (w, c) in p.terms() {
            let mut acc = Self::one().scale(c);
            for &l in w.letters() {
                acc = &acc * &f(l);
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        out
    }

    /// Applies `id ⊗ φ` for a linear functional `φ` on words of the right
    /// leg.
    pub fn contract_right(&self, phi: impl Fn(&Word) -> Q) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), c * phi(b));
        }
        out
    }
}

impl Add for TensorPoly {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for ((a, b), c) in rhs.terms {
            self.add_term(a, b, c);
        }
        self
    }
}

impl Neg for TensorPoly {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(&-Q::one())
    }
}

impl Sub for TensorPoly {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + -rhs
    }
}

impl Mul for &TensorPoly {
    type Output = TensorPoly;

    fn mul(self, rhs: &TensorPoly) -> TensorPoly {
        let mut t = TensorPoly::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &rhs.terms {
                t.add_term(a.concat(x), b.concat(y), c * d);
            }
        }
        t
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) {a} ⊗ {b}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermDoc {
    coef: String,
    left: Word,
    right: Word,
}

impl Serialize for TensorPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let docs: Vec<TensorTermDoc> = self
            .terms
            .iter()
            .map(|((a, b), c)| TensorTermDoc { coef: c.to_string(), left: a.clone(), right: b.clone() })
            .collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut t = Self::zero();
        for doc in Vec::<TensorTermDoc>::deserialize(d)? {
            let c: Q = doc.coef.parse().map_err(|_| serde::de::Error::custom(format!("bad coefficient `{}`", doc.coef)))?;
            t.add_term(doc.left, doc.right, c);
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leg {
    Left,
    Right,
}

/// An ideal element on one leg tensored with a word on the other:
/// `term ⊗ other` for the left leg, `other ⊗ term` for the right leg.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub leg: Leg,
    pub term: CertTerm,
    pub other: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorCertificate {
    pub degree_bound: usize,
    pub terms: Vec<TensorTerm>,
}

impl TensorCertificate {
    pub fn evaluate(&self, left: &Presentation, right: &Presentation) -> TensorPoly {
        let mut acc = TensorPoly::zero();
        for t in &self.terms {
            let other = NCPoly::word(t.other.clone());
            acc = acc
                + match t.leg {
                    Leg::Left => TensorPoly::tensor(&t.term.evaluate(left), &other),
                    Leg::Right => TensorPoly::tensor(&other, &t.term.evaluate(right)),
                };
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TensorMembership {
    Yes { certificate: TensorCertificate },
    Unknown { degree: usize, reason: Option<String> },
}

impl TensorMembership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }

    pub fn certificate(&self) -> Option<&TensorCertificate> {
        match self {
            Self::Yes { certificate } => Some(certificate),
            Self::Unknown { .. } => None,
        }
    }
}

/// Membership in `I_A ⊗ B + A ⊗ I_B` with both legs bounded by the same
/// degree: the right leg is projected first, then the left leg; the
/// element belongs to the ideal iff nothing remains.
pub fn legwise_member(
    t: &TensorPoly,
    left: &mut Prover<'_>,
    right: &mut Prover<'_>,
    max_degree: usize,
) -> Result<TensorMembership, NcError> {
    let (dl, dr) = t.leg_degrees();
    let start = dl.max(dr).max(1);
    if start > max_degree {
        return Err(NcError::QueryTooLarge { degree: start, bound: max_degree });
    }
    for d in start..=max_degree {
        match legwise_at(t, left, right, d) {
            Ok(Some(certificate)) => return Ok(TensorMembership::Yes { certificate }),
            Ok(None) => {}
            Err(NcError::RowBudget { degree, rows, max }) => {
                let reason = format!("row budget exhausted at degree {degree}: {rows} candidate rows exceed {max}");
                return Ok(TensorMembership::Unknown { degree: max_degree, reason: Some(reason) });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(TensorMembership::Unknown { degree: max_degree, reason: None })
}

fn legwise_at(
    t: &TensorPoly,
    left: &mut Prover<'_>,
    right: &mut Prover<'_>,
    d: usize,
) -> Result<Option<TensorCertificate>, NcError> {
    let mut terms = Vec::new();
    let mut by_left: BTreeMap<&Word, NCPoly> = BTreeMap::new();
    for ((a, b), c) in &t.terms {
        by_left.entry(a).or_default().add_term(b.clone(), c.clone());
    }
    let mut stage = TensorPoly::zero();
    for (a, poly) in by_left {
        let proj = right.project(&poly, d)?;
        terms.extend(proj.terms.into_iter().map(|term| TensorTerm { leg: Leg::Right, term, other: a.clone() }));
        for (b, c) in proj.remainder.into_terms() {
            stage.add_term(a.clone(), b, c);
        }
    }
    let mut by_right: BTreeMap<&Word, NCPoly> = BTreeMap::new();
    for ((a, b), c) in &stage.terms {
        by_right.entry(b).or_default().add_term(a.clone(), c.clone());
    }
    for (b, poly) in by_right {
        let proj = left.project(&poly, d)?;
        if !proj.remainder.is_zero() {
            return Ok(None);
        }
        terms.extend(proj.terms.into_iter().map(|term| TensorTerm { leg: Leg::Left, term, other: b.clone() }));
    }
    Ok(Some(TensorCertificate { degree_bound: d, terms }))
}
