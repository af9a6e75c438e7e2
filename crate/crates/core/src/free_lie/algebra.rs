use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::{lyndon_words, witt_dimension, LyndonWord, Weight};
use crate::error::{Error, Result};

/// Sparse integer combination of basis indices, sorted by index.
pub type IntComb = Arc<[(u32, i64)]>;

/// Upper bound on the total basis size we are willing to materialise.
const MAX_BASIS: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisBracket {
    pub word: LyndonWord,
    /// Bracketed form, e.g. `[x1,[x1,x2]]`.
    pub bracketing: String,
    pub multidegree: Weight,
    pub(crate) factor: Option<(u32, u32)>,
}

impl BasisBracket {
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// Basis indices of the standard factorization `(u, v)`.
    pub fn factor(&self) -> Option<(usize, usize)> {
        self.factor.map(|(a, b)| (a as usize, b as usize))
    }
}

/// The Lyndon basis of `F_{k,s}` together with memo tables for bracket
/// rewriting and the `gl_k` derivation action. Obtain shared instances via
/// [`FreeLieAlgebra::get`].
#[derive(Debug)]
pub struct FreeLieAlgebra {
    k: usize,
    s: usize,
    basis: Vec<BasisBracket>,
    index: HashMap<Vec<u8>, u32>,
    degree_start: Vec<usize>,
    products: RwLock<HashMap<(u32, u32), IntComb>>,
    derivations: RwLock<HashMap<(u8, u8, u32), IntComb>>,
}

fn empty() -> IntComb {
    Arc::from(Vec::new())
}

fn accumulate(acc: &mut HashMap<u32, i64>, comb: &[(u32, i64)], factor: i64) {
    for &(i, c) in comb {
        *acc.entry(i).or_insert(0) += c * factor;
    }
}

fn finish(acc: HashMap<u32, i64>) -> IntComb {
    let mut v: Vec<(u32, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable_by_key(|&(i, _)| i);
    Arc::from(v)
}

impl FreeLieAlgebra {
    /// Shared, lazily built instance for `(k, s)`.
    pub fn get(k: usize, s: usize) -> Result<Arc<FreeLieAlgebra>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<FreeLieAlgebra>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(a) = cache.lock().unwrap().get(&(k, s)) {
            return Ok(a.clone());
        }
        let alg = Arc::new(FreeLieAlgebra::build(k, s)?);
        Ok(cache.lock().unwrap().entry((k, s)).or_insert(alg).clone())
    }

    fn build(k: usize, s: usize) -> Result<FreeLieAlgebra> {
        if k == 0 || s == 0 {
            return Err(Error::InvalidParameter(format!(
                "F_{{k,s}} needs k >= 1 and s >= 1, got k={k}, s={s}"
            )));
        }
        if k > 255 {
            return Err(Error::InvalidParameter(format!("k={k} exceeds 255 generators")));
        }
        let mut total = 0u64;
        for d in 1..=s {
            total = total.saturating_add(witt_dimension(k, d)?);
        }
        if total > MAX_BASIS {
            return Err(Error::InvalidParameter(format!(
                "F_{{{k},{s}}} has {total} basis elements, above the limit of {MAX_BASIS}"
            )));
        }
        let mut words = lyndon_words(k, s);
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<u8>, u32> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let mut degree_start = vec![0; s + 2];
        for d in 1..=s + 1 {
            degree_start[d] = words.partition_point(|w| w.len() < d);
        }
        let mut basis: Vec<BasisBracket> = Vec::with_capacity(words.len());
        for w in &words {
            let word = LyndonWord::new_unchecked(w.clone());
            let (factor, bracketing) = match word.standard_factorization() {
                None => (None, format!("x{}", w[0])),
                Some((u, v)) => {
                    let iu = index[u.letters()];
                    let iv = index[v.letters()];
                    let text = format!(
                        "[{},{}]",
                        basis[iu as usize].bracketing, basis[iv as usize].bracketing
                    );
                    (Some((iu, iv)), text)
                }
            };
            basis.push(BasisBracket {
                multidegree: word.multidegree(k),
                word,
                bracketing,
                factor,
            });
        }
        Ok(FreeLieAlgebra {
            k,
            s,
            basis,
            index,
            degree_start,
            products: RwLock::new(HashMap::new()),
            derivations: RwLock::new(HashMap::new()),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Total dimension `Σ_{d ≤ s} witt_dimension(k, d)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisBracket] {
        &self.basis
    }

    pub fn basis_bracket(&self, i: usize) -> &BasisBracket {
        &self.basis[i]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.basis[i].word.len()
    }

    /// Global indices of the degree-`d` basis elements.
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        if d == 0 || d > self.s {
            return 0..0;
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn index_of(&self, letters: &[u8]) -> Option<usize> {
        self.index.get(letters).map(|&i| i as usize)
    }

    fn word(&self, i: u32) -> &[u8] {
        self.basis[i as usize].word.letters()
    }

    /// `[P(a), P(b)]` for basis indices, rewritten into the basis.
    pub fn bracket_basis(&self, a: u32, b: u32) -> IntComb {
        if a == b || self.degree_of(a as usize) + self.degree_of(b as usize) > self.s {
            return empty();
        }
        if self.word(a) > self.word(b) {
            let r = self.bracket_basis(b, a);
            return r.iter().map(|&(i, c)| (i, -c)).collect::<Vec<_>>().into();
        }
        if let Some(r) = self.products.read().unwrap().get(&(a, b)) {
            return r.clone();
        }
        let result = self.bracket_ordered(a, b);
        self.products
            .write()
            .unwrap()
            .insert((a, b), result.clone());
        result
    }

    /// Case `word(a) < word(b)`.
    fn bracket_ordered(&self, a: u32, b: u32) -> IntComb {
        let fa = self.basis[a as usize].factor;
        let direct = match fa {
            None => true,
            Some((_, a2)) => self.word(a2) >= self.word(b),
        };
        if direct {
            let mut w = self.word(a).to_vec();
            w.extend_from_slice(self.word(b));
            let i = self.index[&w];
            return Arc::from(vec![(i, 1)]);
        }
        let (a1, a2) = fa.unwrap();
        // [[a1,a2],b] = [a1,[a2,b]] - [a2,[a1,b]]
        let mut acc = HashMap::new();
        for &(c, x) in self.bracket_basis(a2, b).iter() {
            accumulate(&mut acc, &self.bracket_basis(a1, c), x);
        }
        for &(c, x) in self.bracket_basis(a1, b).iter() {
            accumulate(&mut acc, &self.bracket_basis(a2, c), -x);
        }
        finish(acc)
    }

    /// The derivation `x_j ↦ x_i` (1-based generators) applied to basis
    /// element `a`, by the Leibniz rule over the standard bracketing.
    pub fn derivation_basis(&self, i: u8, j: u8, a: u32) -> IntComb {
        let key = (i, j, a);
        if let Some(r) = self.derivations.read().unwrap().get(&key) {
            return r.clone();
        }
        let result = match self.basis[a as usize].factor {
            None => {
                if self.word(a)[0] == j {
                    Arc::from(vec![(self.index[&vec![i]], 1)])
                } else {
                    empty()
                }
            }
            Some((u, v)) => {
                let mut acc = HashMap::new();
                for &(c, x) in self.derivation_basis(i, j, u).iter() {
                    accumulate(&mut acc, &self.bracket_basis(c, v), x);
                }
                for &(c, x) in self.derivation_basis(i, j, v).iter() {
                    accumulate(&mut acc, &self.bracket_basis(u, c), x);
                }
                finish(acc)
            }
        };
        self.derivations.write().unwrap().insert(key, result.clone());
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_layout() {
        let alg = FreeLieAlgebra::get(2, 3).unwrap();
        assert_eq!(alg.dim(), 5);
        let texts: Vec<_> = alg.basis().iter().map(|b| b.bracketing.as_str()).collect();
        assert_eq!(texts, ["x1", "x2", "[x1,x2]", "[x1,[x1,x2]]", "[[x1,x2],x2]"]);
        assert_eq!(alg.degree_range(3), 3..5);
    }

    #[test]
    fn letters_bracket_to_lyndon_words() {
        let alg = FreeLieAlgebra::get(2, 2).unwrap();
        assert_eq!(&*alg.bracket_basis(0, 1), &[(2, 1)]);
        assert_eq!(&*alg.bracket_basis(1, 0), &[(2, -1)]);
        assert!(alg.bracket_basis(0, 0).is_empty());
    }

    #[test]
    fn jacobi_rewrite_in_degree_three() {
        let alg = FreeLieAlgebra::get(3, 3).unwrap();
        let x = |l: u8| alg.index_of(&[l]).unwrap() as u32;
        // [P(13), x2]: the right factor 3 is >= 2, so the product is P(132).
        let p13 = alg.index_of(&[1, 3]).unwrap() as u32;
        let r = alg.bracket_basis(p13, x(2));
        let i132 = alg.index_of(&[1, 3, 2]).unwrap() as u32;
        assert_eq!(&*r, &[(i132, 1)]);
        // [P(12), x3]: factor (1,2), 2 < 3 so Jacobi:
        // [x1,[x2,x3]] - [x2,[x1,x3]] = P(123) - (-P(132)) = P(123) + P(132)
        let p12 = alg.index_of(&[1, 2]).unwrap() as u32;
        let i123 = alg.index_of(&[1, 2, 3]).unwrap() as u32;
        let mut want = vec![(i123, 1), (i132, 1)];
        want.sort();
        assert_eq!(&*alg.bracket_basis(p12, x(3)), &want[..]);
    }
}
