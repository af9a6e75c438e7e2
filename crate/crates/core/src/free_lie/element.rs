use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_word_text, word_text, BasisBracket, FreeLieAlgebra, Weight};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rational_to_f64, Rational};

/// An element of `F_{k,s}`: a sparse rational combination of Lyndon basis
/// brackets. Also used as a point of the group `(F_{k,s}, *)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    k: usize,
    s: usize,
    /// Basis index (degree-then-lex order of the algebra) to coefficient.
    terms: BTreeMap<u32, Rational>,
}

/// Serialised term: `{ "word": "112", "coeff": "3/2" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: String,
    pub coeff: String,
}

impl LieElement {
    pub fn zero(k: usize, s: usize) -> Self {
        LieElement { k, s, terms: BTreeMap::new() }
    }

    /// The generator `x_i` (1-based).
    pub fn generator(k: usize, s: usize, i: usize) -> Result<Self> {
        if i == 0 || i > k {
            return Err(Error::GeneratorOutOfRange { index: i, available: k });
        }
        Self::from_word(k, s, &[i as u8], Rational::one())
    }

    /// All `k` generators of `F_{k,s}`.
    pub fn generators(k: usize, s: usize) -> Result<Vec<Self>> {
        (1..=k).map(|i| Self::generator(k, s, i)).collect()
    }

    /// `coeff · P(word)` for a Lyndon word.
    pub fn from_word(k: usize, s: usize, letters: &[u8], coeff: Rational) -> Result<Self> {
        let alg = FreeLieAlgebra::get(k, s)?;
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l as usize > k) {
            return Err(Error::GeneratorOutOfRange { index: l as usize, available: k });
        }
        if letters.len() > s {
            return Err(Error::InvalidParameter(format!(
                "word {} is longer than the step {s}",
                word_text(letters)
            )));
        }
        let i = alg.index_of(letters).ok_or_else(|| {
            Error::InvalidParameter(format!("{} is not a Lyndon word", word_text(letters)))
        })?;
        Ok(Self::from_index_terms(k, s, [(i, coeff)]))
    }

    pub(crate) fn from_index_terms(
        k: usize,
        s: usize,
        terms: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in terms {
            if !c.is_zero() {
                let e = map.entry(i as u32).or_insert_with(Rational::zero);
                *e += c;
            }
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        LieElement { k, s, terms: map }
    }

    /// From dense coordinates over the whole basis of `F_{k,s}`.
    pub fn from_coords(k: usize, s: usize, coords: &[Rational]) -> Result<Self> {
        let alg = FreeLieAlgebra::get(k, s)?;
        if coords.len() != alg.dim() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                alg.dim(),
                coords.len()
            )));
        }
        Ok(Self::from_index_terms(k, s, coords.iter().cloned().enumerate()))
    }

    pub fn to_coords(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.algebra().dim()];
        for (&i, c) in &self.terms {
            v[i as usize] = c.clone();
        }
        v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn algebra(&self) -> Arc<FreeLieAlgebra> {
        // Any element was built through a successful `get`.
        FreeLieAlgebra::get(self.k, self.s).expect("algebra of an existing element")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `P(letters)`; zero if absent or not a basis word.
    pub fn coeff(&self, letters: &[u8]) -> Rational {
        self.algebra()
            .index_of(letters)
            .and_then(|i| self.terms.get(&(i as u32)).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn index_terms(&self) -> &BTreeMap<u32, Rational> {
        &self.terms
    }

    /// `(basis bracket, coefficient)` pairs in basis order.
    pub fn terms(&self) -> Vec<(BasisBracket, Rational)> {
        let alg = self.algebra();
        self.terms
            .iter()
            .map(|(&i, c)| (alg.basis_bracket(i as usize).clone(), c.clone()))
            .collect()
    }

    pub fn same_algebra(&self, other: &LieElement) -> Result<()> {
        if (self.k, self.s) != (other.k, other.s) {
            return Err(Error::Mismatch(self.k, self.s, other.k, other.s));
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.k, self.s);
        }
        LieElement {
            k: self.k,
            s: self.s,
            terms: self.terms.iter().map(|(&i, c)| (i, c * r)).collect(),
        }
    }

    /// Degree-`d` homogeneous component.
    pub fn degree_component(&self, d: usize) -> Self {
        let range = self.algebra().degree_range(d);
        LieElement {
            k: self.k,
            s: self.s,
            terms: self
                .terms
                .range(range.start as u32..range.end as u32)
                .map(|(&i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Smallest degree with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        let alg = self.algebra();
        self.terms.keys().next().map(|&i| alg.degree_of(i as usize))
    }

    pub fn max_degree(&self) -> Option<usize> {
        let alg = self.algebra();
        self.terms.keys().next_back().map(|&i| alg.degree_of(i as usize))
    }

    /// The same coordinates read in `F_{k,s'}`, dropping degrees above `s'`.
    pub fn truncate_to(&self, s2: usize) -> Result<Self> {
        let target = FreeLieAlgebra::get(self.k, s2)?;
        let src = self.algebra();
        Ok(Self::from_index_terms(
            self.k,
            s2,
            self.terms.iter().filter_map(|(&i, c)| {
                let w = src.basis_bracket(i as usize).word.letters();
                target.index_of(w).map(|j| (j, c.clone()))
            }),
        ))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        let alg = self.algebra();
        self.terms
            .iter()
            .map(|(&i, c)| TermRecord {
                word: word_text(alg.basis_bracket(i as usize).word.letters()),
                coeff: format_rational(c),
            })
            .collect()
    }

    pub fn from_records(k: usize, s: usize, records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero(k, s);
        for r in records {
            let letters = parse_word_text(&r.word)?;
            let c = parse_rational(&r.coeff)?;
            out = &out + &Self::from_word(k, s, &letters, c)?;
        }
        Ok(out)
    }

    /// Parses `"112:3,12:-1/2"`; `"0"` or the empty string is zero. A word
    /// without `:coeff` has coefficient 1.
    pub fn parse_compact(k: usize, s: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        FreeLieAlgebra::get(k, s)?;
        if text.is_empty() || text == "0" {
            return Ok(Self::zero(k, s));
        }
        let mut records = Vec::new();
        for part in text.split(',') {
            let (word, coeff) = match part.split_once(':') {
                Some((w, c)) => (w.trim(), c.trim()),
                None => (part.trim(), "1"),
            };
            records.push(TermRecord { word: word.into(), coeff: coeff.into() });
        }
        Self::from_records(k, s, &records)
    }

    pub fn to_compact(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.to_records()
            .into_iter()
            .map(|r| format!("{}:{}", r.word, r.coeff))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable sum of bracketed basis elements.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let alg = self.algebra();
        let mut out = String::new();
        for (n, (&i, c)) in self.terms.iter().enumerate() {
            let b = &alg.basis_bracket(i as usize).bracketing;
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if n == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag.is_one() {
                out.push_str(b);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&mag), b));
            }
        }
        out
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement(F_{{{},{}}}: {})", self.k, self.s, self.to_compact())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(ser)
    }
}

fn combine(a: &LieElement, b: &LieElement, sign: i32) -> LieElement {
    assert_eq!((a.k, a.s), (b.k, b.s), "LieElement arithmetic across algebras");
    let mut terms = a.terms.clone();
    for (&i, c) in &b.terms {
        let e = terms.entry(i).or_insert_with(Rational::zero);
        if sign > 0 {
            *e += c;
        } else {
            *e -= c;
        }
        if e.is_zero() {
            terms.remove(&i);
        }
    }
    LieElement { k: a.k, s: a.s, terms }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        combine(self, rhs, 1)
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        combine(self, rhs, -1)
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        combine(&self, &rhs, 1)
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        combine(&self, &rhs, -1)
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement {
            k: self.k,
            s: self.s,
            terms: self.terms.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

/// The Lie bracket `[a, b]` in `F_{k,s}`, expressed in the Lyndon basis.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    a.same_algebra(b)?;
    Ok(bracket_unchecked(a, b))
}

pub(crate) fn bracket_unchecked(a: &LieElement, b: &LieElement) -> LieElement {
    if a.is_zero() || b.is_zero() {
        return LieElement::zero(a.k, a.s);
    }
    let alg = a.algebra();
    let s = a.s;
    let mut acc: HashMap<u32, Rational> = HashMap::new();
    for (&i, x) in &a.terms {
        let di = alg.degree_of(i as usize);
        for (&j, y) in &b.terms {
            if di + alg.degree_of(j as usize) > s {
                // Terms are sorted by degree, so every later j is too deep.
                break;
            }
            let comb = alg.bracket_basis(i, j);
            if comb.is_empty() {
                continue;
            }
            let xy = x * y;
            for &(t, c) in comb.iter() {
                let e = acc.entry(t).or_insert_with(Rational::zero);
                *e += &xy * Rational::from_integer(c.into());
            }
        }
    }
    LieElement::from_index_terms(a.k, a.s, acc.into_iter().map(|(i, c)| (i as usize, c)))
}

/// Restriction of `a` to basis brackets of multidegree `w`.
pub fn weight_component(a: &LieElement, w: &Weight) -> LieElement {
    let Some(w) = w.padded(a.k) else {
        return LieElement::zero(a.k, a.s);
    };
    let alg = a.algebra();
    LieElement {
        k: a.k,
        s: a.s,
        terms: a
            .terms
            .iter()
            .filter(|(&i, _)| alg.basis_bracket(i as usize).multidegree == w)
            .map(|(&i, c)| (i, c.clone()))
            .collect(),
    }
}

fn max_abs_by_degree(a: &LieElement) -> Vec<(usize, Rational)> {
    let alg = a.algebra();
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (&i, c) in &a.terms {
        let e = out.entry(alg.degree_of(i as usize)).or_insert_with(Rational::zero);
        let m = c.abs();
        if m > *e {
            *e = m;
        }
    }
    out.into_iter().collect()
}

/// `max_i ‖a_i‖_∞^{1/i}` over the homogeneous components `a_i`.
pub fn quasi_norm(a: &LieElement) -> f64 {
    max_abs_by_degree(a)
        .into_iter()
        .map(|(d, m)| rational_to_f64(&m).powf(1.0 / d as f64))
        .fold(0.0, f64::max)
}

/// `⌈quasi_norm(a)⌉`, computed exactly.
pub fn quasi_norm_ceil(a: &LieElement) -> BigInt {
    max_abs_by_degree(a)
        .into_iter()
        .map(|(d, m)| {
            let c = m.ceil().to_integer();
            let mut n = c.nth_root(d as u32);
            if num::pow(n.clone(), d) < c {
                n += 1;
            }
            n
        })
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x(k: usize, s: usize, i: usize) -> LieElement {
        LieElement::generator(k, s, i).unwrap()
    }

    #[test]
    fn antisymmetry_and_alternation() {
        let (x1, x2) = (x(2, 2, 1), x(2, 2, 2));
        let b = bracket(&x2, &x1).unwrap();
        assert_eq!(b, LieElement::from_word(2, 2, &[1, 2], q(-1)).unwrap());
        let y = &x1.scale(&q(3)) + &x2;
        assert!(bracket(&y, &y).unwrap().is_zero());
    }

    #[test]
    fn jacobi_on_generators_of_f33() {
        let (x1, x2, x3) = (x(3, 3, 1), x(3, 3, 2), x(3, 3, 3));
        let lhs = bracket(&x1, &bracket(&x2, &x3).unwrap()).unwrap();
        let rhs = &bracket(&bracket(&x1, &x2).unwrap(), &x3).unwrap()
            + &bracket(&x2, &bracket(&x1, &x3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, LieElement::from_word(3, 3, &[1, 2, 3], q(1)).unwrap());
    }

    #[test]
    fn truncation_above_step() {
        let (x1, x2) = (x(2, 2, 1), x(2, 2, 2));
        let b = bracket(&x1, &x2).unwrap();
        assert!(bracket(&x1, &b).unwrap().is_zero());
    }

    #[test]
    fn mismatch_is_rejected() {
        assert!(matches!(
            bracket(&x(2, 2, 1), &x(2, 3, 1)),
            Err(Error::Mismatch(2, 2, 2, 3))
        ));
    }

    #[test]
    fn quasi_norm_examples() {
        let z = LieElement::zero(2, 3);
        assert_eq!(quasi_norm(&z), 0.0);
        let a = LieElement::from_word(2, 3, &[1, 1, 2], q(8)).unwrap();
        assert!((quasi_norm(&a) - 2.0).abs() < 1e-12);
        let b = &x(2, 3, 1).scale(&q(3)) + &a;
        assert!((quasi_norm(&b) - 3.0).abs() < 1e-12);
        assert_eq!(quasi_norm_ceil(&a), BigInt::from(2));
        let c = LieElement::from_word(2, 3, &[1, 1, 2], q(9)).unwrap();
        assert_eq!(quasi_norm_ceil(&c), BigInt::from(3));
    }

    #[test]
    fn weight_components() {
        let b = LieElement::from_word(2, 2, &[1, 2], q(1)).unwrap();
        assert_eq!(weight_component(&b, &Weight::new(vec![1, 1])), b);
        assert!(weight_component(&b, &Weight::new(vec![2, 0])).is_zero());
    }

    #[test]
    fn compact_and_records_round_trip() {
        let a = LieElement::parse_compact(2, 3, "112:3,12:-1/2,1").unwrap();
        assert_eq!(a.to_compact(), "1:1,12:-1/2,112:3");
        let back = LieElement::from_records(2, 3, &a.to_records()).unwrap();
        assert_eq!(a, back);
        assert_eq!(a.to_pretty(), "x1 - 1/2*[x1,x2] + 3*[x1,[x1,x2]]");
        assert!(LieElement::parse_compact(2, 3, "21:1").is_err());
        assert!(LieElement::parse_compact(2, 2, "112:1").is_err());
        assert!(LieElement::parse_compact(2, 3, "13:1").is_err());
    }
}
