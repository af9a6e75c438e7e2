//! Free associative algebra on `k` letters truncated above degree `s`, used
//! to compute `log(exp X · exp Y)` and project back onto the Lyndon basis.

use std::collections::HashMap;

use num::{One, Zero};

use crate::free_lie::{FreeLieAlgebra, LieElement};
use crate::scalar::Rational;

/// Words of degree `d` are coded in base `k` as `u64`.
#[derive(Debug, Clone)]
pub(crate) struct Truncated {
    k: u64,
    s: usize,
    layers: Vec<HashMap<u64, Rational>>,
}

impl Truncated {
    fn zero(k: usize, s: usize) -> Self {
        Truncated { k: k as u64, s, layers: vec![HashMap::new(); s + 1] }
    }

    fn one(k: usize, s: usize) -> Self {
        let mut t = Self::zero(k, s);
        t.layers[0].insert(0, Rational::one());
        t
    }

    fn add_term(&mut self, d: usize, w: u64, c: Rational) {
        let e = self.layers[d].entry(w).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.layers[d].remove(&w);
        }
    }

    fn add_scaled(&mut self, other: &Truncated, f: &Rational) {
        for (d, layer) in other.layers.iter().enumerate() {
            for (&w, c) in layer {
                self.add_term(d, w, c * f);
            }
        }
    }

    fn mul(&self, other: &Truncated) -> Truncated {
        let mut out = Truncated::zero(self.k as usize, self.s);
        for (d1, l1) in self.layers.iter().enumerate() {
            for (d2, l2) in other.layers.iter().enumerate() {
                if d1 + d2 > self.s || l1.is_empty() || l2.is_empty() {
                    continue;
                }
                let shift = self.k.pow(d2 as u32);
                for (&w1, c1) in l1 {
                    for (&w2, c2) in l2 {
                        out.add_term(d1 + d2, w1 * shift + w2, c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// `Σ_{n ≤ s} X^n / n!` for `X` without constant term.
    fn exp(&self) -> Truncated {
        let mut out = Truncated::one(self.k as usize, self.s);
        let mut power = Truncated::one(self.k as usize, self.s);
        let mut fact = Rational::one();
        for n in 1..=self.s {
            power = power.mul(self);
            fact *= Rational::from_integer(n.into());
            out.add_scaled(&power, &(Rational::one() / &fact));
        }
        out
    }

    /// `log(1 + Y) = Σ_{n ≤ s} (-1)^{n+1} Y^n / n` for `self = 1 + Y`.
    fn log(&self) -> Truncated {
        let mut y = self.clone();
        y.layers[0].clear();
        let mut out = Truncated::zero(self.k as usize, self.s);
        let mut power = Truncated::one(self.k as usize, self.s);
        for n in 1..=self.s {
            power = power.mul(&y);
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&power, &Rational::new(sign.into(), (n as i64).into()));
        }
        out
    }
}

/// Converts between Lie elements and associative polynomials of one
/// `F_{k,s}`, memoising basis expansions and Dynkin brackets.
pub(crate) struct AssocBridge {
    k: usize,
    s: usize,
    alg: std::sync::Arc<FreeLieAlgebra>,
    expansions: HashMap<usize, Truncated>,
    dynkin: HashMap<(usize, u64), LieElement>,
}

impl AssocBridge {
    pub(crate) fn new(k: usize, s: usize) -> crate::error::Result<Self> {
        Ok(AssocBridge {
            k,
            s,
            alg: FreeLieAlgebra::get(k, s)?,
            expansions: HashMap::new(),
            dynkin: HashMap::new(),
        })
    }

    /// `P(w)` as a noncommutative polynomial: `P(uv) = P(u)P(v) - P(v)P(u)`.
    fn expand_basis(&mut self, i: usize) -> Truncated {
        if let Some(t) = self.expansions.get(&i) {
            return t.clone();
        }
        let b = self.alg.basis_bracket(i);
        let t = match b.factor() {
            None => {
                let mut t = Truncated::zero(self.k, self.s);
                t.add_term(1, (b.word.letters()[0] - 1) as u64, Rational::one());
                t
            }
            Some((u, v)) => {
                let pu = self.expand_basis(u);
                let pv = self.expand_basis(v);
                let mut t = pu.mul(&pv);
                t.add_scaled(&pv.mul(&pu), &-Rational::one());
                t
            }
        };
        self.expansions.insert(i, t.clone());
        t
    }

    pub(crate) fn to_assoc(&mut self, a: &LieElement) -> Truncated {
        let mut out = Truncated::zero(self.k, self.s);
        for (&i, c) in a.index_terms() {
            let e = self.expand_basis(i as usize);
            out.add_scaled(&e, c);
        }
        out
    }

    /// Left-normed bracket `[..[[x_{w1}, x_{w2}], x_{w3}] .., x_{wd}]`.
    fn left_normed(&mut self, d: usize, code: u64) -> LieElement {
        if let Some(e) = self.dynkin.get(&(d, code)) {
            return e.clone();
        }
        let last = (code % self.k as u64) as usize + 1;
        let x = LieElement::generator(self.k, self.s, last).expect("generator in range");
        let e = if d == 1 {
            x
        } else {
            let prefix = self.left_normed(d - 1, code / self.k as u64);
            crate::free_lie::bracket(&prefix, &x).expect("same algebra")
        };
        self.dynkin.insert((d, code), e.clone());
        e
    }

    /// Dynkin projection of a primitive (Lie) polynomial: the degree-`d`
    /// part equals `(1/d) Σ c_w θ(w)` with `θ` the left-normed bracketing.
    pub(crate) fn to_lie(&mut self, t: &Truncated) -> LieElement {
        let mut out = LieElement::zero(self.k, self.s);
        for d in 1..=self.s {
            let mut layer: Vec<(u64, Rational)> =
                t.layers[d].iter().map(|(&w, c)| (w, c.clone())).collect();
            layer.sort_by_key(|&(w, _)| w);
            let inv_d = Rational::new(1.into(), (d as i64).into());
            for (w, c) in layer {
                let b = self.left_normed(d, w);
                out = &out + &b.scale(&(c * &inv_d));
            }
        }
        out
    }
}

/// `log(exp X · exp Y)` computed entirely in the truncated associative
/// algebra. Independent of the cached formula used by `bch_product`.
pub fn bch_product_assoc(x: &LieElement, y: &LieElement) -> crate::error::Result<LieElement> {
    x.same_algebra(y)?;
    let mut bridge = AssocBridge::new(x.k(), x.s())?;
    let ex = bridge.to_assoc(x).exp();
    let ey = bridge.to_assoc(y).exp();
    let z = ex.mul(&ey).log();
    Ok(bridge.to_lie(&z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_of_basis_brackets() {
        let mut b = AssocBridge::new(2, 3).unwrap();
        let alg = FreeLieAlgebra::get(2, 3).unwrap();
        let i = alg.index_of(&[1, 2]).unwrap();
        let t = b.expand_basis(i);
        // x1x2 - x2x1: codes 0*2+1 = 1 and 1*2+0 = 2
        assert_eq!(t.layers[2].get(&1), Some(&Rational::one()));
        assert_eq!(t.layers[2].get(&2), Some(&-Rational::one()));
    }

    #[test]
    fn dynkin_recovers_lie_elements() {
        let mut b = AssocBridge::new(3, 4).unwrap();
        let alg = FreeLieAlgebra::get(3, 4).unwrap();
        for i in 0..alg.dim() {
            let e = LieElement::from_index_terms(3, 4, [(i, Rational::from_integer(3.into()))]);
            let t = b.to_assoc(&e);
            assert_eq!(b.to_lie(&t), e);
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let x = LieElement::parse_compact(2, 4, "1:2,12:1/3,112:-1").unwrap();
        let mut b = AssocBridge::new(2, 4).unwrap();
        let t = b.to_assoc(&x);
        let back = t.exp().log();
        assert_eq!(b.to_lie(&back), x);
    }
}
