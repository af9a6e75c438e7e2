use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word in the free group on `x1, x2, …`, stored as
/// syllables `(generator, nonzero exponent)` with distinct neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeGroupWord {
    syllables: Vec<(usize, i64)>,
}

impl FreeGroupWord {
    pub fn identity() -> Self {
        FreeGroupWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeGroupWord { syllables: vec![(i, 1)] }
    }

    /// Normalises arbitrary syllables: merges equal neighbours and drops
    /// zero exponents until the word is freely reduced. Generator indices
    /// must be positive.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if g == 0 {
                return Err(Error::InvalidParameter("generator indices start at 1".into()));
            }
            push_syllable(&mut out, g, e);
        }
        Ok(FreeGroupWord { syllables: out })
    }

    /// From letter codes `2(g-1)` for `x_g` and `2(g-1)+1` for `x_g^-1`.
    pub fn from_codes(codes: &[u8]) -> Self {
        let mut out = Vec::new();
        for &c in codes {
            let g = (c / 2) as usize + 1;
            push_syllable(&mut out, g, if c % 2 == 0 { 1 } else { -1 });
        }
        FreeGroupWord { syllables: out }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// `l(w) = Σ |exponent|`.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.syllables.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        FreeGroupWord {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &FreeGroupWord) -> Self {
        let mut out = self.syllables.clone();
        for &(g, e) in &other.syllables {
            push_syllable(&mut out, g, e);
        }
        FreeGroupWord { syllables: out }
    }

    /// Group commutator `a b a^-1 b^-1`.
    pub fn commutator(a: &FreeGroupWord, b: &FreeGroupWord) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Parses `"x1^2 x2^-1 x1"`; `""`, `"e"` and `"1"` denote the identity.
    /// Factors may also be separated by `*`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(Self::identity());
        }
        let bad = |tok: &str| Error::Parse(format!("bad factor {tok:?} in word {text:?}"));
        let mut syl = Vec::new();
        for tok in t.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()) {
            let rest = tok.strip_prefix('x').ok_or_else(|| bad(tok))?;
            let (g, e) = match rest.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad(tok))?),
                None => (rest, 1),
            };
            let g: usize = g.parse().map_err(|_| bad(tok))?;
            if g == 0 {
                return Err(bad(tok));
            }
            syl.push((g, e));
        }
        Self::from_syllables(syl)
    }
}

fn push_syllable(out: &mut Vec<(usize, i64)>, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some((lg, le)) if *lg == g => {
            *le += e;
            if *le == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (n, &(g, e)) in self.syllables.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Iterator over the ball of radius `n` in the free group on `k` letters:
/// freely reduced words by length, then lexicographically with
/// `x1 < x1^-1 < x2 < x2^-1 < …`.
#[derive(Debug, Clone)]
pub struct WordBall {
    k: usize,
    n: usize,
    codes: Vec<u8>,
    done: bool,
}

/// Code of the inverse letter.
pub(crate) fn inverse_code(c: u8) -> u8 {
    c ^ 1
}

pub fn word_ball(k: usize, n: usize) -> WordBall {
    WordBall { k, n, codes: Vec::new(), done: false }
}

impl WordBall {
    fn smallest_after(&self, prev: Option<u8>) -> u8 {
        match prev {
            Some(p) if inverse_code(p) == 0 => 1,
            _ => 0,
        }
    }

    fn advance(&mut self) {
        let alphabet = 2 * self.k as u8;
        let len = self.codes.len();
        for i in (0..len).rev() {
            let prev = if i > 0 { Some(self.codes[i - 1]) } else { None };
            let mut c = self.codes[i] + 1;
            if prev.is_some_and(|p| inverse_code(p) == c) {
                c += 1;
            }
            if c < alphabet {
                self.codes[i] = c;
                for j in i + 1..len {
                    self.codes[j] = self.smallest_after(Some(self.codes[j - 1]));
                }
                return;
            }
        }
        if len == self.n || self.k == 0 {
            self.done = true;
            return;
        }
        self.codes.clear();
        for j in 0..=len {
            let prev = if j > 0 { Some(self.codes[j - 1]) } else { None };
            let c = self.smallest_after(prev);
            self.codes.push(c);
        }
    }
}

impl Iterator for WordBall {
    type Item = FreeGroupWord;

    fn next(&mut self) -> Option<FreeGroupWord> {
        if self.done {
            return None;
        }
        let w = FreeGroupWord::from_codes(&self.codes);
        self.advance();
        Some(w)
    }
}

/// `|B(n)| = 1 + 2k((2k-1)^n - 1)/(2k-2)` for `k ≥ 2`; `2n + 1` for `k = 1`.
pub fn ball_size(k: usize, n: usize) -> u128 {
    match k {
        0 => 1,
        1 => 2 * n as u128 + 1,
        _ => {
            let r = 2 * k as u128 - 1;
            1 + 2 * k as u128 * (r.pow(n as u32) - 1) / (r - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = FreeGroupWord::parse("x1^2 x2^-1 x1").unwrap();
        assert_eq!(w.syllables(), &[(1, 2), (2, -1), (1, 1)]);
        assert_eq!(w.to_string(), "x1^2 x2^-1 x1");
        assert_eq!(w.length(), 4);
        assert_eq!(FreeGroupWord::parse("x1 x1^-1").unwrap(), FreeGroupWord::identity());
        assert_eq!(FreeGroupWord::parse("e").unwrap().to_string(), "e");
        assert!(FreeGroupWord::parse("y1").is_err());
        assert!(FreeGroupWord::parse("x0").is_err());
        assert!(FreeGroupWord::parse("x1^a").is_err());
    }

    #[test]
    fn reduction_on_concat() {
        let a = FreeGroupWord::parse("x1 x2").unwrap();
        assert!(a.concat(&a.inverse()).is_identity());
        let c = FreeGroupWord::commutator(&FreeGroupWord::generator(1), &FreeGroupWord::generator(2));
        assert_eq!(c.to_string(), "x1 x2 x1^-1 x2^-1");
    }

    #[test]
    fn ball_order_and_counts() {
        let words: Vec<String> = word_ball(2, 1).map(|w| w.to_string()).collect();
        assert_eq!(words, ["e", "x1", "x1^-1", "x2", "x2^-1"]);
        assert_eq!(word_ball(2, 2).count(), 17);
        let one: Vec<String> = word_ball(1, 3).map(|w| w.to_string()).collect();
        assert_eq!(one, ["e", "x1", "x1^-1", "x1^2", "x1^-2", "x1^3", "x1^-3"]);
        for (k, n) in [(2, 5), (3, 4), (1, 6)] {
            assert_eq!(word_ball(k, n).count() as u128, ball_size(k, n));
        }
    }

    #[test]
    fn ball_words_are_distinct_and_sorted_by_length() {
        let words: Vec<_> = word_ball(3, 3).collect();
        let set: std::collections::HashSet<_> = words.iter().collect();
        assert_eq!(set.len(), words.len());
        assert!(words.windows(2).all(|p| p[0].length() <= p[1].length()));
    }
}
