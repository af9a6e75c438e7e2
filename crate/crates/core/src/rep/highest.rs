use std::collections::BTreeMap;

use num::Zero;

use super::{weyl_dim, Partition};
use crate::error::{Error, Result};
use crate::free_lie::{witt_dimension, FreeLieAlgebra, LieElement};
use crate::linalg::kernel;
use crate::scalar::Rational;

/// The derivation of `F_{k,s}` sending `x_j` to `x_i` and every other
/// generator to zero (the infinitesimal action of the matrix unit
/// `E_{ij}` of `gl_k`), applied to `a`.
pub fn glk_action(i: usize, j: usize, a: &LieElement) -> Result<LieElement> {
    let k = a.k();
    for g in [i, j] {
        if g == 0 || g > k {
            return Err(Error::GeneratorOutOfRange { index: g, available: k });
        }
    }
    let alg = a.algebra();
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (&b, c) in a.index_terms() {
        for &(t, x) in alg.derivation_basis(i as u8, j as u8, b).iter() {
            *acc.entry(t as usize).or_insert_with(Rational::zero) +=
                c * Rational::from_integer(x.into());
        }
    }
    Ok(LieElement::from_index_terms(k, a.s(), acc))
}

/// Basis of the highest-weight vectors of weight `shape` in `F_k^{[s]}`:
/// the common kernel of the raising operators `E_{i,i+1}` on the weight
/// slice, as a reduced echelon basis.
pub fn highest_weight_vectors(k: usize, s: usize, shape: &Partition) -> Result<Vec<LieElement>> {
    if shape.size() != s {
        return Err(Error::InvalidParameter(format!("{shape} is not a partition of {s}")));
    }
    let Some(weight) = shape.as_weight(k) else {
        return Ok(Vec::new());
    };
    let alg = FreeLieAlgebra::get(k, s)?;
    let slice: Vec<usize> = alg
        .degree_range(s)
        .filter(|&i| alg.basis_bracket(i).multidegree == weight)
        .collect();
    if slice.is_empty() {
        return Ok(Vec::new());
    }
    // Rows of the stacked raising matrix, keyed by (operator, target basis).
    let mut rows: BTreeMap<(usize, u32), Vec<Rational>> = BTreeMap::new();
    for r in 1..k {
        for (col, &b) in slice.iter().enumerate() {
            for &(t, x) in alg.derivation_basis(r as u8, (r + 1) as u8, b as u32).iter() {
                let row = rows
                    .entry((r, t))
                    .or_insert_with(|| vec![Rational::zero(); slice.len()]);
                row[col] += Rational::from_integer(x.into());
            }
        }
    }
    let matrix: Vec<Vec<Rational>> = rows.into_values().collect();
    let ker = kernel(&matrix, slice.len());
    Ok(ker
        .into_iter()
        .map(|v| LieElement::from_index_terms(k, s, slice.iter().copied().zip(v)))
        .collect())
}

/// Number of words `i_1 ≥ i_2 ≥ … ≥ i_{s-1} < i_s` over `1..=k`.
pub fn p_prime_count(k: usize, s: usize) -> u64 {
    if s < 2 {
        return 0;
    }
    // ways[v] = number of weakly decreasing sequences of length n ending in v.
    let mut ways = vec![1u64; k + 1];
    ways[0] = 0;
    for _ in 1..s - 1 {
        let mut next = vec![0u64; k + 1];
        for v in 1..=k {
            next[v] = (v..=k).map(|u| ways[u]).sum();
        }
        ways = next;
    }
    (1..=k).map(|v| ways[v] * (k - v) as u64).sum()
}

/// Dimensions of `F_k^{[s]}/M_k^{[s]} ≅ E^{(s-1,1)}` and of the metabelian
/// part `M_k^{[s]}`. The quotient dimension is cross-checked against a
/// direct count of the words `P'_s`.
pub fn metabelian_layer_dims(k: usize, s: usize) -> Result<(u64, u64)> {
    if s < 2 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "metabelian_layer_dims needs k >= 1 and s >= 2, got k={k}, s={s}"
        )));
    }
    let hook = Partition::new(vec![s - 1, 1])?;
    let quotient = weyl_dim(&hook, k);
    let count = p_prime_count(k, s);
    if quotient != count {
        return Err(Error::Inconsistent(format!(
            "weyl_dim((s-1,1), k) = {quotient} but |P'_s| = {count}"
        )));
    }
    let witt = witt_dimension(k, s)?;
    Ok((quotient, witt - quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_lie::bracket;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn derivation_examples() {
        let x = LieElement::generators(2, 3).unwrap();
        let b = bracket(&x[0], &x[1]).unwrap();
        assert!(glk_action(1, 2, &b).unwrap().is_zero());
        assert!(glk_action(2, 1, &b).unwrap().is_zero());
        let t = bracket(&x[1], &b).unwrap();
        let want = bracket(&x[0], &b).unwrap();
        assert_eq!(glk_action(1, 2, &t).unwrap(), want);
        assert!(glk_action(3, 1, &b).is_err());
    }

    #[test]
    fn derivation_is_a_derivation() {
        let a = LieElement::parse_compact(3, 4, "1:2,12:1,13:-1,2:1").unwrap();
        let b = LieElement::parse_compact(3, 4, "3:1,23:2,112:1/2").unwrap();
        for (i, j) in [(1, 2), (2, 3), (3, 1), (2, 2)] {
            let lhs = glk_action(i, j, &bracket(&a, &b).unwrap()).unwrap();
            let rhs = &bracket(&glk_action(i, j, &a).unwrap(), &b).unwrap()
                + &bracket(&a, &glk_action(i, j, &b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn highest_weight_examples() {
        let v = highest_weight_vectors(2, 2, &p(&[1, 1])).unwrap();
        assert_eq!(v, vec![LieElement::parse_compact(2, 2, "12").unwrap()]);
        let v = highest_weight_vectors(2, 3, &p(&[2, 1])).unwrap();
        assert_eq!(v, vec![LieElement::parse_compact(2, 3, "112").unwrap()]);
        assert_eq!(highest_weight_vectors(3, 6, &p(&[4, 1, 1])).unwrap().len(), 2);
        assert!(highest_weight_vectors(2, 6, &p(&[4, 1, 1])).unwrap().is_empty());
    }

    #[test]
    fn metabelian_examples() {
        assert_eq!(metabelian_layer_dims(2, 2).unwrap(), (1, 0));
        assert_eq!(metabelian_layer_dims(2, 4).unwrap(), (3, 0));
        assert_eq!(metabelian_layer_dims(3, 4).unwrap(), (15, 3));
        for k in 1..=5 {
            for s in 2..=8 {
                metabelian_layer_dims(k, s).unwrap();
            }
        }
    }
}
