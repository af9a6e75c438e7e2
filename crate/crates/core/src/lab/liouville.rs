//! Twisting one of two isomorphic top-layer submodules by a Liouville
//! number gives a central quotient of `F_{k,s}` whose lattice-like
//! subgroups have super-polynomially small nontrivial elements.

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_lie::{
    central_quotient, quasi_norm_ceil, witt_dimension, CentralQuotient, FreeLieAlgebra, LieElement,
};
use crate::linalg::{rank, Echelon};
use crate::rep::{glk_action, highest_weight_vectors, weyl_dim, Partition};
use crate::scalar::{format_rational, log10_rational, Rational};

pub const DEFAULT_TRUNCATION: usize = 5;

/// Largest accepted truncation index; `8! = 40320` decimal digits.
const MAX_TRUNCATION: usize = 8;

pub const LIOUVILLE_CSV_HEADER: &str = "m,p,q,word_length_bound,log10_distance";

fn factorial(n: usize) -> u32 {
    (1..=n as u32).product()
}

fn ten_pow(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `λ_M = Σ_{j=1}^{M} 10^(-j!)`.
pub fn liouville_lambda(m_trunc: usize) -> Rational {
    let top = factorial(m_trunc);
    let num: BigInt = (1..=m_trunc).map(|j| ten_pow(top - factorial(j))).sum();
    Rational::new(num, ten_pow(top))
}

/// Two copies `V1`, `V2` of the irreducible module `E^shape` inside
/// `F_k^{[s]}`, the isomorphism `α: V1 → V2`, and `L_λ = {x + λα(x)}`.
#[derive(Debug, Clone)]
pub struct LiouvilleSetup {
    pub k: usize,
    pub s: usize,
    pub shape: Partition,
    pub truncation: usize,
    pub lambda: Rational,
    pub v1: LieElement,
    pub v2: LieElement,
    /// `v1_basis[i] = Op_i(v1)` and `v2_basis[i] = Op_i(v2)` for the same
    /// product `Op_i` of lowering operators, so `α` is index-wise.
    pub v1_basis: Vec<LieElement>,
    pub v2_basis: Vec<LieElement>,
    pub basis: Vec<LieElement>,
}

/// Builds the twisted submodule from the first two highest-weight vectors
/// of weight `shape`.
pub fn liouville_submodule(k: usize, s: usize, shape: &Partition, m_trunc: usize) -> Result<LiouvilleSetup> {
    if shape.size() != s {
        return Err(Error::InvalidParameter(format!("{shape} is not a partition of {s}")));
    }
    if !(1..=MAX_TRUNCATION).contains(&m_trunc) {
        return Err(Error::InvalidParameter(format!(
            "truncation index must lie in 1..={MAX_TRUNCATION}, got {m_trunc}"
        )));
    }
    let hw = highest_weight_vectors(k, s, shape)?;
    if hw.len() < 2 {
        return Err(Error::NoMultiplicity(format!("{shape} in F_{k}^[{s}] (multiplicity {})", hw.len())));
    }
    let (v1, v2) = (hw[0].clone(), hw[1].clone());
    let alg = FreeLieAlgebra::get(k, s)?;
    let top = alg.degree_range(s);
    let top_coords = |e: &LieElement| e.to_coords()[top.clone()].to_vec();

    let mut ech = Echelon::new(top.len());
    ech.insert(&top_coords(&v1));
    let mut v1_basis = vec![v1.clone()];
    let mut v2_basis = vec![v2.clone()];
    let mut next = 0;
    while next < v1_basis.len() {
        for i in 1..k {
            let a = glk_action(i + 1, i, &v1_basis[next])?;
            if a.is_zero() || !ech.insert(&top_coords(&a)) {
                continue;
            }
            let b = glk_action(i + 1, i, &v2_basis[next])?;
            v1_basis.push(a);
            v2_basis.push(b);
        }
        next += 1;
    }

    let dim = weyl_dim(shape, k) as usize;
    let rows1: Vec<Vec<Rational>> = v1_basis.iter().map(top_coords).collect();
    let rows2: Vec<Vec<Rational>> = v2_basis.iter().map(top_coords).collect();
    let r1 = rank(&rows1, top.len());
    let r2 = rank(&rows2, top.len());
    let both: Vec<Vec<Rational>> = rows1.iter().chain(&rows2).cloned().collect();
    let r12 = rank(&both, top.len());
    if r1 != dim || r2 != dim || r12 != 2 * dim {
        return Err(Error::Inconsistent(format!(
            "module closure of {shape}: ranks {r1}, {r2}, joint {r12}, expected {dim}, {dim}, {}",
            2 * dim
        )));
    }
    debug_assert!(2 * dim <= witt_dimension(k, s)? as usize);

    let lambda = liouville_lambda(m_trunc);
    let basis = v1_basis
        .iter()
        .zip(&v2_basis)
        .map(|(b, a)| b + &a.scale(&lambda))
        .collect();
    Ok(LiouvilleSetup {
        k,
        s,
        shape: shape.clone(),
        truncation: m_trunc,
        lambda,
        v1,
        v2,
        v1_basis,
        v2_basis,
        basis,
    })
}

/// `F_{k,s} / span(L_λ)` with exact rational structure constants.
pub fn liouville_quotient(setup: &LiouvilleSetup) -> Result<CentralQuotient<Rational>> {
    central_quotient(setup.k, setup.s, &setup.basis)
}

/// `min_t max_i |r_i - t·w_i|`, exactly. The objective is convex and
/// piecewise linear, so the minimum sits at a kink: a zero of one term or a
/// crossing of two.
pub fn line_distance(r: &[Rational], w: &[Rational]) -> Result<Rational> {
    if r.len() != w.len() {
        return Err(Error::InvalidParameter("vectors of different lengths".into()));
    }
    let fixed = r
        .iter()
        .zip(w)
        .filter(|(_, w)| w.is_zero())
        .map(|(r, _)| r.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let moving: Vec<(&Rational, &Rational)> = r.iter().zip(w).filter(|(_, w)| !w.is_zero()).collect();
    if moving.is_empty() {
        return Err(Error::Degenerate("direction vector is zero".into()));
    }
    let eval = |t: &Rational| {
        moving
            .iter()
            .map(|(r, w)| (*r - t * *w).abs())
            .max()
            .expect("nonempty")
            .max(fixed.clone())
    };
    let mut cands: Vec<Rational> = moving.iter().map(|(r, w)| *r / *w).collect();
    for (a, (ri, wi)) in moving.iter().enumerate() {
        for (rj, wj) in &moving[a + 1..] {
            for sign in [1i32, -1] {
                let sg = Rational::from_integer(sign.into());
                let den = *wi - &(&sg * *wj);
                if !den.is_zero() {
                    cands.push((*ri - &(&sg * *rj)) / den);
                }
            }
        }
    }
    Ok(cands.iter().map(eval).min().expect("nonempty"))
}

/// An integral element `r = q·x + p·α(x)` of the top layer, `p/q` the
/// `m`-th truncation of `λ`, with its exact distance to `L_λ`.
#[derive(Debug, Clone)]
pub struct LiouvilleWitness {
    pub m: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// `⌈|r|⌉` for the homogeneous quasi-norm; `lie_to_word` realises `r`
    /// by a word of length `O(|r|)`.
    pub word_length_bound: BigInt,
    pub distance: Rational,
    /// `|p - qλ| · ‖α(x)‖_∞`.
    pub bound: Rational,
    pub x: LieElement,
    pub r: LieElement,
}

impl LiouvilleWitness {
    pub fn log10_distance(&self) -> f64 {
        log10_rational(&self.distance)
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6}",
            self.m,
            self.p,
            self.q,
            self.word_length_bound,
            self.log10_distance()
        )
    }
}

impl Serialize for LiouvilleWitness {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Row {
            m: usize,
            p: String,
            q: String,
            word_length_bound: String,
            log10_distance: f64,
            distance: String,
        }
        Row {
            m: self.m,
            p: self.p.to_string(),
            q: self.q.to_string(),
            word_length_bound: self.word_length_bound.to_string(),
            log10_distance: self.log10_distance(),
            distance: format_rational(&self.distance),
        }
        .serialize(ser)
    }
}

fn denominator_lcm(e: &LieElement) -> BigInt {
    e.index_terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn max_norm(e: &LieElement) -> Rational {
    e.index_terms().values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
}

/// The `m`-th decay witness, `1 ≤ m < M`. `x` is the smallest integral
/// multiple of `v1` for which `α(x)` is integral too.
pub fn liouville_decay(setup: &LiouvilleSetup, m: usize) -> Result<LiouvilleWitness> {
    if m == 0 || m >= setup.truncation {
        return Err(Error::InvalidParameter(format!(
            "witness index must satisfy 1 <= m < {}, got {m}",
            setup.truncation
        )));
    }
    if setup.v1.is_zero() || setup.v2.is_zero() {
        return Err(Error::Degenerate("zero highest-weight vector".into()));
    }
    let c = Rational::from_integer(denominator_lcm(&setup.v1).lcm(&denominator_lcm(&setup.v2)));
    let x = setup.v1.scale(&c);
    let ax = setup.v2.scale(&c);
    let mf = factorial(m);
    let q = ten_pow(mf);
    let p: BigInt = (1..=m).map(|j| ten_pow(mf - factorial(j))).sum();
    let qr = Rational::from_integer(q.clone());
    let pr = Rational::from_integer(p.clone());
    let r = &x.scale(&qr) + &ax.scale(&pr);

    // L_λ is a submodule, hence a sum of weight spaces, and its intersection
    // with the weight slice of `shape` is spanned by v1 + λ v2. The max-norm
    // distance to L_λ is attained inside that slice.
    let direction = &x + &ax.scale(&setup.lambda);
    let support: Vec<u32> = {
        let mut s: Vec<u32> = r.index_terms().keys().copied().collect();
        s.extend(direction.index_terms().keys().copied());
        s.sort_unstable();
        s.dedup();
        s
    };
    let coord = |e: &LieElement, i: u32| e.index_terms().get(&i).cloned().unwrap_or_else(Rational::zero);
    let rv: Vec<Rational> = support.iter().map(|&i| coord(&r, i)).collect();
    let wv: Vec<Rational> = support.iter().map(|&i| coord(&direction, i)).collect();
    let distance = line_distance(&rv, &wv)?;

    let bound = (&pr - &qr * &setup.lambda).abs() * max_norm(&ax);
    if distance.is_zero() || distance > bound {
        return Err(Error::Inconsistent(format!(
            "witness m={m}: distance 10^{:.2} outside (0, 10^{:.2}]",
            log10_rational(&distance),
            log10_rational(&bound)
        )));
    }
    Ok(LiouvilleWitness {
        m,
        p,
        q,
        word_length_bound: quasi_norm_ceil(&r),
        distance,
        bound,
        x,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn lambda_truncations() {
        assert_eq!(liouville_lambda(1), Rational::new(1.into(), 10.into()));
        assert_eq!(liouville_lambda(2), Rational::new(11.into(), 100.into()));
        assert_eq!(liouville_lambda(3), Rational::new(110001.into(), 1000000.into()));
    }

    #[test]
    fn toy_plane() {
        // x = (1, 0), α(x) = (0, 1), L = span(1, λ).
        let lambda = liouville_lambda(5);
        let w = [Rational::one(), lambda.clone()];
        for m in 2..5usize {
            let mf = factorial(m);
            let q = Rational::from_integer(ten_pow(mf));
            let pp: BigInt = (1..=m).map(|j| ten_pow(mf - factorial(j))).sum();
            let pr = Rational::from_integer(pp);
            let d = line_distance(&[q.clone(), pr.clone()], &w).unwrap();
            let gap = (&pr - &q * &lambda).abs();
            assert!(d > Rational::zero() && d <= gap);
            // min_t max(|q - t|, |p - tλ|) = |p - qλ| / (1 + λ)
            assert_eq!(d, &gap / (Rational::one() + &lambda));
            let qm = Rational::new(BigInt::one(), ten_pow(mf * m as u32));
            assert!(d < qm);
        }
    }

    #[test]
    fn line_distance_brute_force() {
        let r: Vec<Rational> = [3, -1, 4].iter().map(|&v| Rational::from_integer(v.into())).collect();
        let w: Vec<Rational> = [1, 2, 0].iter().map(|&v| Rational::from_integer(v.into())).collect();
        let d = line_distance(&r, &w).unwrap();
        let mut best = f64::INFINITY;
        for i in -4000..4000 {
            let t = i as f64 / 1000.0;
            let v = (3.0 - t).abs().max((-1.0 - 2.0 * t).abs()).max(4.0);
            best = best.min(v);
        }
        assert_eq!(d, Rational::from_integer(4.into()));
        assert!((best - 4.0).abs() < 1e-9);
    }

    #[test]
    fn submodule_for_411() {
        let setup = liouville_submodule(3, 6, &p(&[4, 1, 1]), 3).unwrap();
        assert_eq!(setup.basis.len(), 10);
        assert!(liouville_submodule(3, 5, &p(&[3, 1, 1]), 3).is_err());
        assert!(matches!(
            liouville_submodule(3, 5, &p(&[3, 2]), 3),
            Err(Error::NoMultiplicity(_))
        ));
    }
}
