use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FreeLieAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::linalg::{invert, Echelon};
use crate::scalar::{parse_rational, Rational, Real, Scalar};

/// A finite-dimensional graded nilpotent Lie algebra given by structure
/// constants `[e_i, e_j] = Σ_k c(i,j,k) e_k` (0-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentAlgebra<S: Scalar> {
    dimension: usize,
    step: usize,
    grading: Vec<usize>,
    degrees: Vec<usize>,
    /// `rows[i]` lists `(j, [(k, c)])` for `j > i`, sorted by `j`.
    rows: Vec<Vec<(usize, Vec<(usize, S)>)>>,
}

impl<S: Scalar> NilpotentAlgebra<S> {
    /// Builds an algebra from `(i, j, k, c)` entries. An entry with `i > j`
    /// is read as `c(j,i,k) = -c`; giving both orientations is allowed only
    /// if they agree.
    pub fn new(grading: Vec<usize>, entries: Vec<(usize, usize, usize, S)>) -> Result<Self> {
        let dimension: usize = grading.iter().sum();
        if dimension == 0 {
            return Err(Error::InvalidParameter("algebra of dimension 0".into()));
        }
        let step = grading.len();
        let mut degrees = Vec::with_capacity(dimension);
        for (d, &n) in grading.iter().enumerate() {
            degrees.extend(std::iter::repeat_n(d + 1, n));
        }
        let mut map: BTreeMap<(usize, usize, usize), S> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dimension || j >= dimension || k >= dimension {
                return Err(Error::InvalidParameter(format!(
                    "structure constant index ({i},{j},{k}) out of range for dimension {dimension}"
                )));
            }
            if c.is_zero() {
                continue;
            }
            if i == j {
                return Err(Error::InvalidParameter(format!(
                    "c({i},{i},{k}) must vanish (antisymmetry)"
                )));
            }
            let (key, val) = if i < j { ((i, j, k), c) } else { ((j, i, k), -c) };
            match map.get(&key) {
                Some(prev) if *prev != val => {
                    return Err(Error::InvalidParameter(format!(
                        "c({},{},{}) given twice with inconsistent values",
                        key.0, key.1, key.2
                    )))
                }
                _ => {
                    map.insert(key, val);
                }
            }
        }
        let mut rows: Vec<Vec<(usize, Vec<(usize, S)>)>> = vec![Vec::new(); dimension];
        for ((i, j, k), c) in map {
            match rows[i].last_mut() {
                Some((jj, list)) if *jj == j => list.push((k, c)),
                _ => rows[i].push((j, vec![(k, c)])),
            }
        }
        Ok(NilpotentAlgebra { dimension, step, grading, degrees, rows })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Nonzero constants `(i, j, k, c)` with `i < j`, in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, list) in row {
                for (k, c) in list {
                    out.push((i, *j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> S {
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let found = self.rows[a]
            .iter()
            .find(|(jj, _)| *jj == b)
            .and_then(|(_, list)| list.iter().find(|(kk, _)| *kk == k))
            .map(|(_, c)| c.clone());
        match found {
            Some(c) if sign => -c,
            Some(c) => c,
            None => S::zero(),
        }
    }

    pub fn zero_vector(&self) -> Vec<S> {
        vec![S::zero(); self.dimension]
    }

    /// `[a, b]` on coordinate vectors.
    pub fn bracket(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = self.zero_vector();
        for (i, row) in self.rows.iter().enumerate() {
            let (ai, bi) = (&a[i], &b[i]);
            if ai.is_zero() && bi.is_zero() {
                continue;
            }
            for (j, list) in row {
                let coef = ai.clone() * b[*j].clone() - a[*j].clone() * bi.clone();
                if coef.is_zero() {
                    continue;
                }
                for (k, c) in list {
                    out[*k] = out[*k].clone() + coef.clone() * c.clone();
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<S> {
        let mut v = self.zero_vector();
        v[i] = S::one();
        v
    }

    /// `[e_i, e_j] + [e_j, e_i] = 0` for all basis pairs, through [`bracket`].
    ///
    /// [`bracket`]: NilpotentAlgebra::bracket
    pub fn check_antisymmetry(&self) -> bool {
        (0..self.dimension).all(|i| {
            (0..self.dimension).all(|j| {
                let s = add(&self.bracket(&self.unit(i), &self.unit(j)), &self.bracket(&self.unit(j), &self.unit(i)));
                s.iter().all(|x| x.is_negligible())
            })
        })
    }

    /// Jacobi identity on all basis triples whose degrees can interact.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dimension;
        let units: Vec<Vec<S>> = (0..n).map(|i| self.unit(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket(&units[i], &units[j]);
                for l in j + 1..n {
                    if self.degrees[i] + self.degrees[j] + self.degrees[l] > self.step {
                        continue;
                    }
                    let jl = self.bracket(&units[j], &units[l]);
                    let li = self.bracket(&units[l], &units[i]);
                    let t1 = self.bracket(&units[i], &jl);
                    let t2 = self.bracket(&units[j], &li);
                    let t3 = self.bracket(&units[l], &ij);
                    if !add(&add(&t1, &t2), &t3).iter().all(|x| x.is_negligible()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Layer `i` bracketed with layer `j` lands in layer `i + j` (nothing
    /// beyond the step).
    pub fn check_grading(&self) -> bool {
        self.entries()
            .iter()
            .all(|(i, j, k, _)| self.degrees[*i] + self.degrees[*j] == self.degrees[*k])
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> NilpotentAlgebra<T> {
        NilpotentAlgebra {
            dimension: self.dimension,
            step: self.step,
            grading: self.grading.clone(),
            degrees: self.degrees.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(j, list)| (*j, list.iter().map(|(k, c)| (*k, f(c))).collect()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dimension: self.dimension,
            step: self.step,
            grading: self.grading.clone(),
            structure_constants: self
                .entries()
                .into_iter()
                .map(|(i, j, k, c)| ConstantJson { i, j, k, c: c.to_text() })
                .collect(),
        }
    }
}

fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

impl NilpotentAlgebra<Rational> {
    /// `F_{k,s}` itself in its Lyndon basis.
    pub fn free(k: usize, s: usize) -> Result<Self> {
        let alg = FreeLieAlgebra::get(k, s)?;
        let n = alg.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if alg.degree_of(i) + alg.degree_of(j) > s {
                    // Degree order: later j only get deeper.
                    break;
                }
                for &(t, c) in alg.bracket_basis(i as u32, j as u32).iter() {
                    entries.push((i, j, t as usize, Rational::from_integer(c.into())));
                }
            }
        }
        let grading = (1..=s).map(|d| alg.degree_range(d).len()).collect();
        Self::new(grading, entries)
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let entries = json
            .structure_constants
            .iter()
            .map(|e| Ok((e.i, e.j, e.k, parse_rational(&e.c)?)))
            .collect::<Result<Vec<_>>>()?;
        json.validate_header()?;
        Self::new(json.grading.clone(), entries)
    }
}

impl NilpotentAlgebra<Real> {
    pub fn from_json_real(json: &AlgebraJson, digits: u32) -> Result<Self> {
        let entries = json
            .structure_constants
            .iter()
            .map(|e| Ok((e.i, e.j, e.k, Real::parse(&e.c, digits)?)))
            .collect::<Result<Vec<_>>>()?;
        json.validate_header()?;
        Self::new(json.grading.clone(), entries)
    }
}

/// Serialised form of a [`NilpotentAlgebra`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dimension: usize,
    pub step: usize,
    pub grading: Vec<usize>,
    pub structure_constants: Vec<ConstantJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl AlgebraJson {
    fn validate_header(&self) -> Result<()> {
        if self.grading.iter().sum::<usize>() != self.dimension || self.grading.len() != self.step {
            return Err(Error::InvalidParameter(format!(
                "grading {:?} does not match dimension {} and step {}",
                self.grading, self.dimension, self.step
            )));
        }
        Ok(())
    }
}

/// `F_{k,s} / span(L)` for a subspace `L` of the top layer, with the map
/// taking `F_{k,s}` coordinates to quotient coordinates.
#[derive(Debug, Clone)]
pub struct CentralQuotient<S: Scalar> {
    pub algebra: NilpotentAlgebra<S>,
    pub k: usize,
    pub s: usize,
    /// Number of basis elements of degree `< s` (copied unchanged).
    pub lower_dim: usize,
    /// Global `F_{k,s}` basis indices of the degree-`s` brackets kept as a
    /// complement of `span(L)`.
    pub complement: Vec<usize>,
    /// `projection[t][c]`: coefficient of complement element `c` in the
    /// image of top-layer basis element `t`.
    projection: Vec<Vec<S>>,
}

impl<S: Scalar> CentralQuotient<S> {
    /// Quotient coordinates of a vector given in `F_{k,s}` coordinates.
    pub fn project_coords(&self, v: &[S]) -> Vec<S> {
        let mut out: Vec<S> = v[..self.lower_dim].to_vec();
        let mut top = vec![S::zero(); self.complement.len()];
        for (t, y) in v[self.lower_dim..].iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (c, p) in self.projection[t].iter().enumerate() {
                if !p.is_zero() {
                    top[c] = top[c].clone() + y.clone() * p.clone();
                }
            }
        }
        out.extend(top);
        out
    }

    pub fn project(&self, a: &LieElement) -> Result<Vec<S>> {
        if (a.k(), a.s()) != (self.k, self.s) {
            return Err(Error::Mismatch(a.k(), a.s(), self.k, self.s));
        }
        let v: Vec<S> = a.to_coords().iter().map(|c| S::one().scale(c)).collect();
        Ok(self.project_coords(&v))
    }
}

/// Central quotient by relations given in dense `F_{k,s}` coordinates.
pub fn central_quotient_coords<S: Scalar>(
    k: usize,
    s: usize,
    relations: &[Vec<S>],
) -> Result<CentralQuotient<S>> {
    let alg = FreeLieAlgebra::get(k, s)?;
    let top = alg.degree_range(s);
    let lower_dim = top.start;
    let top_dim = top.len();
    let mut ech = Echelon::new(top_dim);
    for (n, rel) in relations.iter().enumerate() {
        if rel.len() != alg.dim() {
            return Err(Error::InvalidParameter(format!(
                "relation {n} has {} coordinates, expected {}",
                rel.len(),
                alg.dim()
            )));
        }
        if let Some(i) = (0..lower_dim).find(|&i| !rel[i].is_negligible()) {
            return Err(Error::NotTopDegree {
                step: s,
                detail: format!(
                    "relation {n} has a degree-{} term on {}",
                    alg.degree_of(i),
                    alg.basis_bracket(i).bracketing
                ),
            });
        }
        ech.insert(&rel[lower_dim..]);
    }
    let mut full_rows = ech.rows();
    let rel_rank = full_rows.len();
    let mut complement = Vec::new();
    for t in 0..top_dim {
        let mut e = vec![S::zero(); top_dim];
        e[t] = S::one();
        if ech.insert(&e) {
            complement.push(t);
            full_rows.push(e);
        }
    }
    let inv = invert(&full_rows)
        .ok_or_else(|| Error::Inconsistent("complement basis is singular".into()))?;
    let projection: Vec<Vec<S>> = inv.iter().map(|row| row[rel_rank..].to_vec()).collect();

    let mut entries = Vec::new();
    for i in 0..lower_dim {
        for j in i + 1..lower_dim {
            if alg.degree_of(i) + alg.degree_of(j) > s {
                break;
            }
            let comb = alg.bracket_basis(i as u32, j as u32);
            let mut top_acc = vec![S::zero(); complement.len()];
            for &(t, c) in comb.iter() {
                let c = S::one().scale(&Rational::from_integer(c.into()));
                let t = t as usize;
                if t < lower_dim {
                    entries.push((i, j, t, c));
                } else {
                    for (cc, p) in projection[t - lower_dim].iter().enumerate() {
                        if !p.is_zero() {
                            top_acc[cc] = top_acc[cc].clone() + c.clone() * p.clone();
                        }
                    }
                }
            }
            for (cc, v) in top_acc.into_iter().enumerate() {
                if !v.is_negligible() {
                    entries.push((i, j, lower_dim + cc, v));
                }
            }
        }
    }
    let mut grading: Vec<usize> = (1..s).map(|d| alg.degree_range(d).len()).collect();
    grading.push(complement.len());
    while grading.len() > 1 && grading.last() == Some(&0) {
        grading.pop();
    }
    let algebra = NilpotentAlgebra::new(grading, entries)?;
    Ok(CentralQuotient {
        algebra,
        k,
        s,
        lower_dim,
        complement: complement.into_iter().map(|t| lower_dim + t).collect(),
        projection,
    })
}

/// `F_{k,s} / span(L)` for exact top-degree relations `L`.
pub fn central_quotient(
    k: usize,
    s: usize,
    relations: &[LieElement],
) -> Result<CentralQuotient<Rational>> {
    let mut coords = Vec::with_capacity(relations.len());
    for r in relations {
        if (r.k(), r.s()) != (k, s) {
            return Err(Error::Mismatch(r.k(), r.s(), k, s));
        }
        coords.push(r.to_coords());
    }
    central_quotient_coords(k, s, &coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn free_algebra_is_a_lie_algebra() {
        for (k, s) in [(2, 4), (3, 3), (2, 5)] {
            let a = NilpotentAlgebra::free(k, s).unwrap();
            assert!(a.check_antisymmetry());
            assert!(a.check_jacobi());
            assert!(a.check_grading());
        }
    }

    #[test]
    fn heisenberg_constants() {
        let a = NilpotentAlgebra::free(2, 2).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.entries(), vec![(0, 1, 2, q(1))]);
        assert_eq!(a.constant(1, 0, 2), q(-1));
    }

    #[test]
    fn quotient_examples() {
        let b = LieElement::from_word(2, 2, &[1, 2], q(1)).unwrap();
        let qa = central_quotient(2, 2, &[b]).unwrap();
        assert_eq!(qa.algebra.dimension(), 2);
        assert!(qa.algebra.entries().is_empty());
        let qa = central_quotient(2, 2, &[]).unwrap();
        assert_eq!(qa.algebra.dimension(), 3);
        assert_eq!(qa.algebra, NilpotentAlgebra::free(2, 2).unwrap());
    }

    #[test]
    fn quotient_of_f26_by_a_line() {
        let alg = FreeLieAlgebra::get(2, 6).unwrap();
        let top = alg.degree_range(6);
        let mut coords = vec![q(0); alg.dim()];
        coords[top.start] = q(1);
        coords[top.start + 3] = q(-2);
        let r = LieElement::from_coords(2, 6, &coords).unwrap();
        let qa = central_quotient(2, 6, &[r.clone()]).unwrap();
        assert_eq!(qa.algebra.dimension(), 22);
        assert!(qa.algebra.check_jacobi());
        assert!(qa.algebra.check_grading());
        // The relation itself projects to zero.
        assert!(qa.project(&r).unwrap().iter().all(|c| c == &q(0)));
        // Greedy in basis order: the first dependent bracket is the fourth.
        let want: Vec<usize> = [0, 1, 2, 4, 5, 6, 7, 8].iter().map(|t| top.start + t).collect();
        assert_eq!(qa.complement, want);
    }

    #[test]
    fn non_top_relations_are_rejected() {
        let x1 = LieElement::generator(2, 3, 1).unwrap();
        assert!(matches!(
            central_quotient(2, 3, &[x1]),
            Err(Error::NotTopDegree { step: 3, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = NilpotentAlgebra::free(2, 3).unwrap();
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: AlgebraJson = serde_json::from_str(&j).unwrap();
        assert_eq!(NilpotentAlgebra::from_json(&back).unwrap(), a);
        let r = NilpotentAlgebra::from_json_real(&back, 40).unwrap();
        assert!(r.check_jacobi());
    }

    #[test]
    fn inconsistent_duplicates_are_rejected() {
        let e = vec![(0, 1, 2, q(1)), (1, 0, 2, q(1))];
        assert!(NilpotentAlgebra::new(vec![2, 1], e).is_err());
        let e = vec![(0, 1, 2, q(1)), (1, 0, 2, q(-1))];
        assert!(NilpotentAlgebra::new(vec![2, 1], e).is_ok());
    }
}
