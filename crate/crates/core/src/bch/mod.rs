//! The group `(F_{k,s}, *)` under the truncated Campbell–Baker–Hausdorff
//! product, free-group words, and the passage between words and Lie
//! elements.
//!
//! The product is computed once per step `s` as a Lie polynomial in two
//! letters (in the truncated free associative algebra, see
//! [`bch_product_assoc`]) and then evaluated by substitution, which works
//! verbatim in `F_{k,s}` and in any [`NilpotentAlgebra`] given by structure
//! constants.
//!
//! [`NilpotentAlgebra`]: crate::free_lie::NilpotentAlgebra

mod assoc;
mod word;

pub use assoc::bch_product_assoc;
pub use word::{ball_size, word_ball, FreeGroupWord, WordBall};
pub(crate) use word::inverse_code;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, Integer, Signed, Zero};

use crate::error::{Error, Result};
use crate::free_lie::{
    quasi_norm_ceil, BasisBracket, FreeLieAlgebra, LieElement, NilpotentAlgebra,
};
use crate::scalar::{Rational, Scalar};

/// `log(exp x1 · exp x2)` in `F_{2,s}`, stored as Lyndon coefficients and
/// evaluated in other algebras by substituting for `x1`, `x2`.
#[derive(Debug)]
pub struct BchFormula {
    s: usize,
    alg: Arc<FreeLieAlgebra>,
    coeffs: Vec<(usize, Rational)>,
    /// Basis indices whose values are needed, in increasing order.
    needed: Vec<usize>,
}

impl BchFormula {
    pub fn get(s: usize) -> Result<Arc<BchFormula>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BchFormula>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&s) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::build(s)?);
        Ok(cache.lock().unwrap().entry(s).or_insert(f).clone())
    }

    fn build(s: usize) -> Result<BchFormula> {
        let x = LieElement::generator(2, s, 1)?;
        let y = LieElement::generator(2, s, 2)?;
        let z = bch_product_assoc(&x, &y)?;
        let alg = FreeLieAlgebra::get(2, s)?;
        let coeffs: Vec<(usize, Rational)> =
            z.index_terms().iter().map(|(&i, c)| (i as usize, c.clone())).collect();
        let mut mark = vec![false; alg.dim()];
        let mut stack: Vec<usize> = coeffs.iter().map(|(i, _)| *i).collect();
        while let Some(i) = stack.pop() {
            if mark[i] {
                continue;
            }
            mark[i] = true;
            if let Some((u, v)) = alg.basis_bracket(i).factor() {
                stack.push(u);
                stack.push(v);
            }
        }
        let needed = (0..alg.dim()).filter(|&i| mark[i]).collect();
        Ok(BchFormula { s, alg, coeffs, needed })
    }

    pub fn step(&self) -> usize {
        self.s
    }

    pub fn terms(&self) -> Vec<(BasisBracket, Rational)> {
        self.coeffs
            .iter()
            .map(|(i, c)| (self.alg.basis_bracket(*i).clone(), c.clone()))
            .collect()
    }

    pub fn as_lie_element(&self) -> LieElement {
        LieElement::from_index_terms(2, self.s, self.coeffs.iter().cloned())
    }

    /// Substitutes `x`, `y` for the two letters. `bracket` need not
    /// truncate: terms above the target step vanish there anyway.
    pub fn evaluate<T: Clone>(
        &self,
        x: &T,
        y: &T,
        mut acc: T,
        is_zero: impl Fn(&T) -> bool,
        bracket: impl Fn(&T, &T) -> T,
        add_scaled: impl Fn(&mut T, &Rational, &T),
    ) -> T {
        let mut values: Vec<Option<T>> = vec![None; self.alg.dim()];
        for &i in &self.needed {
            let b = self.alg.basis_bracket(i);
            values[i] = match b.factor() {
                None => Some(if b.word.letters()[0] == 1 { x.clone() } else { y.clone() }),
                Some((u, v)) => match (&values[u], &values[v]) {
                    (Some(a), Some(c)) => {
                        let r = bracket(a, c);
                        (!is_zero(&r)).then_some(r)
                    }
                    _ => None,
                },
            };
        }
        for (i, c) in &self.coeffs {
            if let Some(v) = &values[*i] {
                add_scaled(&mut acc, c, v);
            }
        }
        acc
    }
}

/// `X * Y = log(exp X exp Y)` in `F_{k,s}`, exact.
pub fn bch_product(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    x.same_algebra(y)?;
    if x.is_zero() {
        return Ok(y.clone());
    }
    if y.is_zero() {
        return Ok(x.clone());
    }
    let f = BchFormula::get(x.s())?;
    Ok(f.evaluate(
        x,
        y,
        LieElement::zero(x.k(), x.s()),
        |a| a.is_zero(),
        crate::free_lie::element_bracket,
        |acc, c, v| *acc = &*acc + &v.scale(c),
    ))
}

/// The group inverse, `-X`.
pub fn bch_inverse(x: &LieElement) -> LieElement {
    -x
}

impl<S: Scalar> NilpotentAlgebra<S> {
    /// The CBH product on coordinate vectors.
    pub fn bch(&self, a: &[S], b: &[S]) -> Result<Vec<S>> {
        let f = BchFormula::get(self.step())?;
        Ok(self.bch_with(&f, a, b))
    }

    pub(crate) fn bch_with(&self, f: &BchFormula, a: &[S], b: &[S]) -> Vec<S> {
        f.evaluate(
            &a.to_vec(),
            &b.to_vec(),
            self.zero_vector(),
            |v| v.iter().all(|x| x.is_zero()),
            |u, v| self.bracket(u, v),
            |acc, c, v| {
                for (t, x) in acc.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *t = t.clone() + x.scale(c);
                    }
                }
            },
        )
    }

    /// Evaluates `w` in coordinates, with `points[g-1]` the log-coordinates
    /// of the `g`-th group element.
    pub fn eval_word(&self, w: &FreeGroupWord, points: &[Vec<S>]) -> Result<Vec<S>> {
        let f = BchFormula::get(self.step())?;
        let mut acc = self.zero_vector();
        for &(g, e) in w.syllables() {
            let p = points
                .get(g - 1)
                .ok_or(Error::GeneratorOutOfRange { index: g, available: points.len() })?;
            if p.len() != self.dimension() {
                return Err(Error::InvalidParameter(format!(
                    "point has {} coordinates, algebra has dimension {}",
                    p.len(),
                    self.dimension()
                )));
            }
            let e = Rational::from_integer(e.into());
            let step: Vec<S> = p.iter().map(|x| x.scale(&e)).collect();
            acc = self.bch_with(&f, &acc, &step);
        }
        Ok(acc)
    }
}

/// Evaluates `w` at `args` (one group element per generator index):
/// a left-to-right fold of the CBH product. Powers use `exp(X)^n = exp(nX)`.
pub fn eval_word(w: &FreeGroupWord, args: &[LieElement]) -> Result<LieElement> {
    let first = args
        .first()
        .ok_or_else(|| Error::InvalidParameter("eval_word needs at least one argument".into()))?;
    for a in args {
        a.same_algebra(first)?;
    }
    let mut acc = LieElement::zero(first.k(), first.s());
    for &(g, e) in w.syllables() {
        let arg = args
            .get(g - 1)
            .ok_or(Error::GeneratorOutOfRange { index: g, available: args.len() })?;
        acc = bch_product(&acc, &arg.scale(&Rational::from_integer(e.into())))?;
    }
    Ok(acc)
}

/// `log w(e^{x_1}, …, e^{x_k})` in `F_{k,s}`.
pub fn word_to_lie(w: &FreeGroupWord, k: usize, s: usize) -> Result<LieElement> {
    let gens = LieElement::generators(k, s)?;
    eval_word(w, &gens)
}

/// Group word for the bracket tree of basis element `i`, with the given
/// powers on its leaves (in left-to-right order).
fn tree_word(alg: &FreeLieAlgebra, i: usize, powers: &mut std::slice::Iter<'_, i64>) -> FreeGroupWord {
    let b = alg.basis_bracket(i);
    match b.factor() {
        None => {
            let p = *powers.next().expect("one power per leaf");
            FreeGroupWord::from_syllables([(b.word.letters()[0] as usize, p)]).expect("valid letter")
        }
        Some((u, v)) => {
            let wu = tree_word(alg, u, powers);
            let wv = tree_word(alg, v, powers);
            FreeGroupWord::commutator(&wu, &wv)
        }
    }
}

/// A word `w` with `word_to_lie(w) = r` for an integral element `r` of the
/// top layer of `F_{k,s}`.
///
/// Each coefficient is written in base `b = ⌈|r|⌉ + 1`, so every digit
/// `a_i b^i` is realised by one nested group commutator whose first leaf is
/// raised to `±a_i` and the next `i` leaves to `b`. The resulting length is
/// linear in the quasi-norm `|r|` for fixed `(k, s)`.
pub fn lie_to_word(r: &LieElement) -> Result<FreeGroupWord> {
    let s = r.s();
    if r.is_zero() {
        return Ok(FreeGroupWord::identity());
    }
    if r.min_degree() != Some(s) {
        return Err(Error::NotTopDegree {
            step: s,
            detail: format!("element has a degree-{} term", r.min_degree().unwrap_or(0)),
        });
    }
    let alg = r.algebra();
    let base: BigInt = quasi_norm_ceil(r) + 1;
    let mut word = FreeGroupWord::identity();
    for (&i, c) in r.index_terms() {
        if !c.is_integer() {
            return Err(Error::InvalidParameter(format!(
                "lie_to_word needs integral coefficients, found {c}"
            )));
        }
        let sign: i64 = if c.is_negative() { -1 } else { 1 };
        let mut rest = c.to_integer().abs();
        let mut digit_pos = 0usize;
        while !rest.is_zero() {
            let (q, a) = rest.div_rem(&base);
            if !a.is_zero() {
                let a = i64::try_from(a).map_err(|_| Error::Overflow("digit".into()))?;
                let b = i64::try_from(base.clone()).map_err(|_| Error::Overflow("base".into()))?;
                let mut powers = vec![1i64; s];
                powers[0] = sign * a;
                for p in powers.iter_mut().skip(1).take(digit_pos) {
                    *p = b;
                }
                word = word.concat(&tree_word(&alg, i as usize, &mut powers.iter()));
            }
            rest = q;
            digit_pos += 1;
        }
        debug_assert!(digit_pos <= s);
    }
    Ok(word)
}
