use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Generator sorts. The derived order `uV < uE < p < s < s*` is the
/// monomial order on letters together with index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    UV(u32, u32),
    UE(u32, u32),
    P(u32),
    S(u32),
    SStar(u32),
}

impl Generator {
    /// `uV`, `uE` and `p` are formally self-adjoint; `s` and `s*` are
    /// adjoint to each other.
    pub fn is_selfadjoint_sort(self) -> bool {
        matches!(self, Self::UV(..) | Self::UE(..) | Self::P(..))
    }

    pub fn token(self) -> String {
        match self {
            Self::UV(i, j) => format!("uV:{i}:{j}"),
            Self::UE(i, j) => format!("uE:{i}:{j}"),
            Self::P(i) => format!("p:{i}"),
            Self::S(i) => format!("s:{i}"),
            Self::SStar(i) => format!("s*:{i}"),
        }
    }

    pub fn parse_token(t: &str) -> Option<Self> {
        let mut parts = t.split(':');
        let head = parts.next()?;
        let nums: Vec<u32> = parts.map(|p| p.parse().ok()).collect::<Option<_>>()?;
        match (head, nums.as_slice()) {
            ("uV", [i, j]) => Some(Self::UV(*i, *j)),
            ("uE", [i, j]) => Some(Self::UE(*i, *j)),
            ("p", [i]) => Some(Self::P(*i)),
            ("s", [i]) => Some(Self::S(*i)),
            ("s*", [i]) => Some(Self::SStar(*i)),
            _ => None,
        }
    }
}

/// A generator, possibly starred. Only self-adjoint sorts carry a star;
/// the adjoint of `s` is the separate generator `s*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub star: bool,
}

impl Letter {
    pub const fn new(gen: Generator) -> Self {
        Self { gen, star: false }
    }

    pub fn adjoint(self) -> Self {
        match self.gen {
            Generator::S(i) => Self::new(Generator::SStar(i)),
            Generator::SStar(i) => Self::new(Generator::S(i)),
            gen => Self { gen, star: !self.star },
        }
    }

    pub fn token(self) -> String {
        let mut t = self.gen.token();
        if self.star {
            t.push('*');
        }
        t
    }

    pub fn parse_token(t: &str) -> Option<Self> {
        match t.strip_suffix('*').and_then(Generator::parse_token) {
            Some(gen) if gen.is_selfadjoint_sort() => Some(Self { gen, star: true }),
            _ => Some(Self::new(Generator::parse_token(t)?)),
        }
    }
}

impl From<Generator> for Letter {
    fn from(gen: Generator) -> Self {
        Self::new(gen)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = String::deserialize(d)?;
        Self::parse_token(&t).ok_or_else(|| serde::de::Error::custom(format!("bad generator token `{t}`")))
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = String::deserialize(d)?;
        Self::parse_token(&t).ok_or_else(|| serde::de::Error::custom(format!("bad generator token `{t}`")))
    }
}

/// A monomial, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 6]>);

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self(Vec::<Letter>::deserialize(d)?.into_iter().collect()))
    }
}

/// Rationals as decimal strings `"p/q"`.
pub(crate) mod q_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Q;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let t = String::deserialize(d)?;
        t.parse().map_err(|_| serde::de::Error::custom(format!("bad rational `{t}`")))
    }
}

impl Word {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn letter(l: impl Into<Letter>) -> Self {
        let mut w = Self::default();
        w.0.push(l.into());
        w
    }

    pub fn from_letters(ls: impl IntoIterator<Item = Letter>) -> Self {
        Self(ls.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w
    }

    pub fn concat3(a: &Self, b: &Self, c: &Self) -> Self {
        let mut w = SmallVec::with_capacity(a.len() + b.len() + c.len());
        w.extend_from_slice(&a.0);
        w.extend_from_slice(&b.0);
        w.extend_from_slice(&c.0);
        Self(w)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.adjoint()).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let tokens: Vec<String> = self.0.iter().map(|l| l.token()).collect();
        f.write_str(&tokens.join("·"))
    }
}

/// Noncommutative polynomial with exact rational coefficients. The empty
/// word is the unit; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Q>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Word::one(), c)
    }

    pub fn term(w: Word, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Q::one())
    }

    pub fn gen(g: Generator) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::letter(l))
    }

    /// Sum of generators with unit coefficients.
    pub fn sum_of(gens: impl IntoIterator<Item = Generator>) -> Self {
        let mut p = Self::zero();
        for g in gens {
            p.add_term(Word::letter(g), Q::one());
        }
        p
    }

    pub fn product_of(gens: impl IntoIterator<Item = Generator>) -> Self {
        Self::word(Word::from_letters(gens.into_iter().map(Letter::new)))
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Q)> {
        self.terms.into_iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    /// Maximal word length; `0` for constants and for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    pub fn leading(&self) -> Option<(&Word, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut p = Self::zero();
        for (w, c) in &self.terms {
            p.add_term(w.adjoint(), c.clone());
        }
        p
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.terms.keys().flat_map(|w| w.0.iter().copied())
    }

    /// `left · self · right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (Word::concat3(left, w, right), c.clone())).collect() }
    }

    /// Applies an algebra map given on letters.
    pub fn substitute(&self, f: &mut impl FnMut(Letter) -> Self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
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

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(Word::from_letters(w.letters().iter().map(|&l| f(l))), c.clone());
        }
        out
    }

    /// Commutator `ab − ba`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }
}

impl Add for NCPoly {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;

    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        -&self
    }
}

impl Sub for NCPoly {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + -rhs
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;

    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.clone() + -rhs
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, |w| w.to_string())
    }
}

/// Writes terms from the leading word down as `c·w ± ...`.
pub(crate) fn write_poly(
    f: &mut impl fmt::Write,
    p: &NCPoly,
    show: impl Fn(&Word) -> String,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (w, c)) in p.terms.iter().rev().enumerate() {
        let neg = c < &Q::zero();
        let mag = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if w.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&show(w))?;
        } else {
            write!(f, "{mag} {}", show(w))?;
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coef: String,
    word: Word,
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let docs: Vec<TermDoc> =
            self.terms.iter().map(|(w, c)| TermDoc { coef: c.to_string(), word: w.clone() }).collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let docs = Vec::<TermDoc>::deserialize(d)?;
        let mut p = NCPoly::zero();
        for t in docs {
            let c: Q = t.coef.parse().map_err(|_| serde::de::Error::custom(format!("bad coefficient `{}`", t.coef)))?;
            p.add_term(t.word, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: u32, j: u32) -> NCPoly {
        NCPoly::gen(Generator::UV(i, j))
    }

    #[test]
    fn letter_order_follows_sorts() {
        let ls = [
            Letter::new(Generator::SStar(0)),
            Letter::new(Generator::S(0)),
            Letter::new(Generator::P(0)),
            Letter::new(Generator::UE(0, 0)),
            Letter::new(Generator::UV(1, 0)),
            Letter::new(Generator::UV(0, 1)),
        ];
        let mut sorted = ls;
        sorted.sort();
        assert_eq!(sorted[0].gen, Generator::UV(0, 1));
        assert_eq!(sorted[5].gen, Generator::SStar(0));
    }

    #[test]
    fn graded_order() {
        let a = Word::letter(Generator::SStar(3));
        let b = Word::from_letters([Letter::new(Generator::UV(0, 0)); 2]);
        assert!(a < b);
        assert!(Word::one() < a);
    }

    #[test]
    fn arithmetic() {
        let p = &u(0, 0) + &u(0, 1);
        let sq = &p * &p;
        assert_eq!(sq.n_terms(), 4);
        assert!((&p - &p).is_zero());
        assert_eq!(NCPoly::commutator(&u(0, 0), &u(0, 0)), NCPoly::zero());
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn adjoint_is_involutive_antihomomorphism() {
        let s = NCPoly::gen(Generator::S(0));
        let ps = &u(0, 1) * &s;
        let adj = ps.adjoint();
        // (u s)* = s* u*
        let expect = NCPoly::word(Word::from_letters([
            Letter::new(Generator::SStar(0)),
            Letter { gen: Generator::UV(0, 1), star: true },
        ]));
        assert_eq!(adj, expect);
        assert_eq!(adj.adjoint(), ps);
    }

    #[test]
    fn tokens_round_trip() {
        for l in [
            Letter::new(Generator::UV(2, 3)),
            Letter { gen: Generator::UE(0, 1), star: true },
            Letter::new(Generator::SStar(4)),
            Letter::new(Generator::S(4)),
            Letter { gen: Generator::P(1), star: true },
        ] {
            assert_eq!(Letter::parse_token(&l.token()), Some(l));
        }
        assert_eq!(Letter::parse_token("s*:1"), Some(Letter::new(Generator::SStar(1))));
        assert_eq!(Letter::parse_token("q:1"), None);
    }

    #[test]
    fn serde_round_trip() {
        let p = &(&u(0, 1) * &u(1, 0)).scale(&Q::new(BigInt::from(-2), BigInt::from(3))) + &NCPoly::one();
        let json = serde_json::to_string(&p).unwrap();
        let back: NCPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = &u(0, 1) - &NCPoly::one();
        assert_eq!(p.to_string(), "uV:0:1 - 1");
    }
}
