//! Dense Gaussian elimination over a [`Scalar`] field.
//!
//! Matrices are small (weight slices and top layers of `F_{k,s}` for
//! `s ≤ 8`), so everything is dense and row-major.

use crate::scalar::Scalar;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are removed. Pivot rows are chosen by largest
/// magnitude, which is irrelevant for rationals and stabilising for reals;
/// the pivot *columns*, and hence the result, are deterministic.
pub fn rref<S: Scalar>(rows: &mut Vec<Vec<S>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<(usize, S)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if row[c].is_negligible() {
                continue;
            }
            let mag = row[c].abs();
            match &best {
                Some((_, m)) if *m >= mag => {}
                _ => best = Some((i, mag)),
            }
        }
        let Some((p, _)) = best else { continue };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        rows[r][c] = S::one();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` in reduced row echelon form.
pub fn kernel<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); ncols];
        v[f] = S::one();
        for (row, &p) in m.iter().zip(&pivots) {
            if !row[f].is_zero() {
                v[p] = -row[f].clone();
            }
        }
        basis.push(v);
    }
    rref(&mut basis, ncols);
    basis
}

/// Incrementally maintained echelon basis, used for independence tests
/// while growing a span one vector at a time.
#[derive(Debug, Clone)]
pub struct Echelon<S: Scalar> {
    ncols: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
            v[*p] = S::zero();
        }
        v
    }

    /// Adds `v` if it is independent of the current span; returns whether it
    /// was added.
    pub fn insert(&mut self, v: &[S]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let mut r = self.reduce(v);
        let Some(p) = (0..self.ncols)
            .filter(|&c| !r[c].is_negligible())
            .max_by(|&a, &b| {
                r[a].abs()
                    .partial_cmp(&r[b].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(b.cmp(&a))
            })
        else {
            return false;
        };
        let inv = S::one() / r[p].clone();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        r[p] = S::one();
        // Keep existing rows reduced at the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            row[p] = S::zero();
        }
        self.rows.push((p, r));
        true
    }

    /// Current basis rows, in insertion order.
    pub fn rows(&self) -> Vec<Vec<S>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_negligible())
    }
}

/// Solves `x B = v` for square invertible `B` given by its rows. Returns
/// `None` when `B` is singular.
pub fn solve_left<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    let n = basis.len();
    // Transpose: B^T x^T = v^T, augmented.
    let mut aug: Vec<Vec<S>> = (0..n)
        .map(|c| {
            let mut row: Vec<S> = basis.iter().map(|b| b[c].clone()).collect();
            row.push(v[c].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.len() != n || pivots.iter().any(|&p| p == n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square matrix given by rows, or `None` if singular.
pub fn invert<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rref_of_rank_deficient_matrix() {
        let mut m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = rref(&mut m, 3);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m, mat(&[&[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = mat(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ker = kernel(&a, 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &a {
                let dot: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[q(1), q(1), q(0)]));
        assert!(e.insert(&[q(0), q(1), q(1)]));
        assert!(!e.insert(&[q(1), q(2), q(1)]));
        assert!(e.contains(&[q(2), q(0), q(-2)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn solve_and_invert() {
        let b = mat(&[&[1, 1], &[0, 2]]);
        let x = solve_left(&b, &[q(3), q(7)]).unwrap();
        // x0 * (1,1) + x1 * (0,2) = (3,7)
        assert_eq!(x, vec![q(3), Rational::new(2.into(), 1.into())]);
        let inv = invert(&b).unwrap();
        assert_eq!(inv[0][0], q(1));
        assert!(invert(&mat(&[&[1, 2], &[2, 4]])).is_none());
    }
}
