//! The free `s`-step nilpotent Lie algebra `F_{k,s}` over the rationals.
//!
//! Basis elements are Lyndon words with their standard (right) bracketing.
//! Brackets of basis pairs are rewritten into the basis by the classical
//! Jacobi reduction and memoised per algebra.

mod algebra;
mod element;
mod nilpotent;

pub use algebra::{BasisBracket, FreeLieAlgebra, IntComb};
pub use element::{bracket, quasi_norm, quasi_norm_ceil, weight_component, LieElement, TermRecord};
pub(crate) use element::bracket_unchecked as element_bracket;
pub use nilpotent::{
    central_quotient, central_quotient_coords, AlgebraJson, CentralQuotient, ConstantJson,
    NilpotentAlgebra,
};

use std::fmt;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multidegree `(n_1, …, n_k)`: how often each generator occurs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    pub entries: Vec<usize>,
}

impl Weight {
    pub fn new(entries: Vec<usize>) -> Self {
        Weight { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pads with zeros (or truncates trailing zeros) to exactly `k` entries.
    pub fn padded(&self, k: usize) -> Option<Weight> {
        if self.entries.iter().skip(k).any(|&e| e != 0) {
            return None;
        }
        let mut entries = self.entries.clone();
        entries.resize(k, 0);
        Some(Weight { entries })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A word over the generators `1..=k` that is strictly smaller than each of
/// its proper rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord {
    letters: Vec<u8>,
}

impl LyndonWord {
    /// Validates `letters` (1-based generator indices).
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() || letters.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "letters {letters:?} are not positive generator indices"
            )));
        }
        if !is_lyndon(&letters) {
            return Err(Error::InvalidParameter(format!(
                "{} is not a Lyndon word",
                word_text(&letters)
            )));
        }
        Ok(LyndonWord { letters })
    }

    pub(crate) fn new_unchecked(letters: Vec<u8>) -> Self {
        LyndonWord { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn multidegree(&self, k: usize) -> Weight {
        let mut entries = vec![0; k];
        for &l in &self.letters {
            entries[l as usize - 1] += 1;
        }
        Weight { entries }
    }

    /// Standard factorization `w = uv` with `v` the longest proper Lyndon
    /// suffix. `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let w = &self.letters;
        (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| {
            (
                LyndonWord::new_unchecked(w[..i].to_vec()),
                LyndonWord::new_unchecked(w[i..].to_vec()),
            )
        })
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_text(&self.letters))
    }
}

/// Compact text for a word: digits concatenated when every letter is a
/// single digit (`"112"`), dot-separated otherwise (`"1.10.12"`).
pub fn word_text(letters: &[u8]) -> String {
    if letters.iter().all(|&l| l < 10) {
        letters.iter().map(|l| char::from(b'0' + l)).collect()
    } else {
        letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn parse_word_text(text: &str) -> Result<Vec<u8>> {
    let text = text.trim();
    let parse = |t: &str| -> Result<u8> {
        t.parse::<u8>()
            .ok()
            .filter(|&l| l > 0)
            .ok_or_else(|| Error::Parse(format!("bad generator index {t:?} in word {text:?}")))
    };
    if text.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    if text.contains('.') {
        text.split('.').map(parse).collect()
    } else {
        text.chars().map(|c| parse(&c.to_string())).collect()
    }
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rot)
    })
}

/// All Lyndon words of length `1..=s` over `1..=k`, in lexicographic order
/// (Duval's generation algorithm).
pub(crate) fn lyndon_words(k: usize, s: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k == 0 || s == 0 {
        return out;
    }
    let mut w: Vec<i32> = vec![-1];
    loop {
        let last = w.len() - 1;
        w[last] += 1;
        out.push(w.iter().map(|&l| (l + 1) as u8).collect());
        let m = w.len();
        while w.len() < s {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k as i32 - 1)) {
            w.pop();
        }
        if w.is_empty() {
            break;
        }
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `(1/s) Σ_{d|s} μ(d) k^{s/d}`, the dimension of the degree-`s` layer.
pub fn witt_dimension(k: usize, s: usize) -> Result<u64> {
    if k == 0 || s == 0 {
        return Err(Error::InvalidParameter(format!(
            "witt_dimension needs k >= 1 and s >= 1, got k={k}, s={s}"
        )));
    }
    let mut total = BigInt::zero();
    for d in divisors(s as u64) {
        let mu = mobius(d);
        if mu != 0 {
            total += BigInt::from(mu) * num::pow(BigInt::from(k), (s as u64 / d) as usize);
        }
    }
    let q = total / BigInt::from(s);
    u64::try_from(q).map_err(|_| Error::Overflow(format!("witt_dimension({k}, {s})")))
}

/// Lyndon basis of `F_{k,s}` grouped by degree: entry `d - 1` holds the
/// degree-`d` brackets in lexicographic order.
pub fn lyndon_basis(k: usize, s: usize) -> Result<Vec<Vec<BasisBracket>>> {
    let alg = FreeLieAlgebra::get(k, s)?;
    Ok((1..=s)
        .map(|d| alg.degree_range(d).map(|i| alg.basis_bracket(i).clone()).collect())
        .collect())
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Witt's character formula: the dimension of the weight space of `w` in
/// the free Lie algebra, `(1/n) Σ_{d | gcd} μ(d) (n/d)! / Π (n_i/d)!`.
pub fn witt_character(w: &Weight) -> u64 {
    let n = w.size();
    if n == 0 {
        return 0;
    }
    let g = w.entries.iter().fold(0usize, |g, &e| num::integer::gcd(g, e));
    let mut total = BigInt::zero();
    for d in divisors(g as u64) {
        let d = d as usize;
        let mu = mobius(d as u64);
        if mu == 0 {
            continue;
        }
        let mut term = factorial(n / d);
        for &e in &w.entries {
            term /= factorial(e / d);
        }
        total += BigInt::from(mu) * term;
    }
    u64::try_from(total / BigInt::from(n)).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_lyndon(k: u8, len: usize) -> Vec<Vec<u8>> {
        let mut words = vec![vec![]];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (1..=k).map(move |l| {
                        let mut w2 = w.clone();
                        w2.push(l);
                        w2
                    })
                })
                .collect();
        }
        words.into_iter().filter(|w| is_lyndon(w)).collect()
    }

    #[test]
    fn duval_matches_brute_force() {
        for k in 1..=3u8 {
            for s in 1..=6 {
                let mut got = lyndon_words(k as usize, s);
                got.sort();
                let mut want: Vec<_> = (1..=s).flat_map(|d| brute_lyndon(k, d)).collect();
                want.sort();
                assert_eq!(got, want, "k={k} s={s}");
            }
        }
    }

    #[test]
    fn duval_output_is_lexicographic() {
        let w = lyndon_words(3, 5);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(w[0], vec![1]);
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dimension(2, 6).unwrap(), 9);
        assert_eq!(witt_dimension(3, 3).unwrap(), 8);
        assert_eq!(witt_dimension(2, 1).unwrap(), 2);
        for k in 2..=6u64 {
            assert_eq!(witt_dimension(k as usize, 3).unwrap(), (k * k * k - k) / 3);
        }
        assert!(witt_dimension(0, 3).is_err());
        assert!(witt_dimension(3, 0).is_err());
    }

    #[test]
    fn witt_counts_lyndon_words() {
        for k in 1..=4u8 {
            for d in 1..=7 {
                assert_eq!(
                    witt_dimension(k as usize, d).unwrap() as usize,
                    brute_lyndon(k, d).len()
                );
            }
        }
    }

    #[test]
    fn character_formula_examples() {
        assert_eq!(witt_character(&Weight::new(vec![3, 2])), 2);
        assert_eq!(witt_character(&Weight::new(vec![4, 0])), 0);
        assert_eq!(witt_character(&Weight::new(vec![1; 6])), 120);
        assert_eq!(witt_character(&Weight::new(vec![1])), 1);
    }

    #[test]
    fn standard_factorization_takes_longest_lyndon_suffix() {
        let w = LyndonWord::new(vec![1, 1, 2]).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!((u.letters(), v.letters()), (&[1u8][..], &[1u8, 2][..]));
        let w = LyndonWord::new(vec![1, 2, 2]).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!((u.letters(), v.letters()), (&[1u8, 2][..], &[2u8][..]));
        let w = LyndonWord::new(vec![1, 1, 2, 1, 2]).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!((u.letters(), v.letters()), (&[1u8, 1, 2][..], &[1u8, 2][..]));
        assert!(LyndonWord::new(vec![2, 1]).is_err());
    }

    #[test]
    fn word_text_round_trip() {
        assert_eq!(word_text(&[1, 1, 2]), "112");
        assert_eq!(word_text(&[1, 10, 12]), "1.10.12");
        assert_eq!(parse_word_text("112").unwrap(), vec![1, 1, 2]);
        assert_eq!(parse_word_text("1.10.12").unwrap(), vec![1, 10, 12]);
        assert!(parse_word_text("1a").is_err());
        assert!(parse_word_text("102").is_err());
    }
}
