//! `SL_k`-module structure of the degree-`s` layer `F_k^{[s]}`.
//!
//! Multiplicities of the irreducibles `E^λ` come from three independent
//! routes: peeling Witt weight multiplicities with Kostka numbers
//! ([`decompose`]), counting standard tableaux by major index
//! ([`kw_multiplicity`]), and explicit highest-weight vectors
//! ([`highest_weight_vectors`]).

mod highest;

pub use highest::{glk_action, highest_weight_vectors, metabelian_layer_dims, p_prime_count};

use std::cmp::Ordering;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_lie::{witt_character, witt_dimension, Weight};

/// Default cap on `s` for [`decompose`].
pub const DEFAULT_MAX_S: usize = 8;

/// A Young diagram: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "{parts:?} is not a partition (parts must be positive and weakly decreasing)"
            )));
        }
        Ok(Partition { parts })
    }

    /// Parses `"[4,1,1]"` or `"4,1,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(Partition { parts: vec![] });
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..cols).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect(),
        }
    }

    /// Dominance order: every prefix sum of `self` is ≥ that of `other`
    /// (equal sizes assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.rows().max(other.rows());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// As a weight with exactly `k` entries, or `None` if it has more rows.
    pub fn as_weight(&self, k: usize) -> Option<Weight> {
        Weight::new(self.parts.clone()).padded(k)
    }

    /// All partitions of `n` in reverse-lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Reverse-lexicographic comparison (larger first parts sort first).
    pub fn revlex_cmp(&self, other: &Partition) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A filling of a Young diagram by `1..=n`, increasing along rows and down
/// columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for r in &rows {
            for &e in r {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidParameter(format!(
                        "tableau entries must be a permutation of 1..={n}"
                    )));
                }
                seen[e] = true;
            }
        }
        for (i, r) in rows.iter().enumerate() {
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(format!("row {} is not increasing", i + 1)));
            }
            if i > 0 && r.iter().zip(&rows[i - 1]).any(|(b, a)| a >= b) {
                return Err(Error::InvalidParameter(format!(
                    "column entries must increase downwards (row {})",
                    i + 1
                )));
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    /// Parses `"1,3;2"` (rows separated by `;`).
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|r| {
                r.trim()
                    .trim_start_matches('[')
                    .trim_end_matches(']')
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad tableau {text:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    fn row_of(&self) -> Vec<usize> {
        let mut row = vec![0; self.shape.size() + 1];
        for (i, r) in self.rows.iter().enumerate() {
            for &e in r {
                row[e] = i;
            }
        }
        row
    }

    /// `i` is a descent when `i + 1` sits in a strictly lower row.
    pub fn descents(&self) -> Vec<usize> {
        let row = self.row_of();
        (1..self.shape.size()).filter(|&i| row[i + 1] > row[i]).collect()
    }

    /// All standard tableaux of a shape, by backtracking over the corner
    /// that receives each of `1..=n` in turn.
    pub fn all(shape: &Partition) -> Vec<StandardTableau> {
        let n = shape.size();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.rows()];
        let mut out = Vec::new();
        fn rec(
            next: usize,
            n: usize,
            shape: &[usize],
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<StandardTableau>,
        ) {
            if next > n {
                out.push(StandardTableau {
                    shape: Partition { parts: shape.to_vec() },
                    rows: rows.clone(),
                });
                return;
            }
            for r in 0..shape.len() {
                let len = rows[r].len();
                if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                    rows[r].push(next);
                    rec(next + 1, n, shape, rows, out);
                    rows[r].pop();
                }
            }
        }
        rec(1, n, shape.parts(), &mut rows, &mut out);
        out
    }
}

/// Sum of the descents of `t`.
pub fn major_index(t: &StandardTableau) -> usize {
    t.descents().iter().sum()
}

/// Number of semistandard tableaux of `shape` in which `i` occurs
/// `content_i` times (rows weakly, columns strictly increasing).
pub fn kostka(shape: &Partition, content: &Weight) -> u64 {
    if shape.size() != content.size() {
        return 0;
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
    let mut remaining = content.entries.clone();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        remaining: &mut Vec<usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        let mut total = 0;
        for v in lo..=remaining.len() {
            if remaining[v - 1] == 0 {
                continue;
            }
            remaining[v - 1] -= 1;
            grid[r][c] = v;
            total += rec(idx + 1, cells, grid, remaining);
            remaining[v - 1] += 1;
        }
        grid[r][c] = 0;
        total
    }
    rec(0, &cells, &mut grid, &mut remaining)
}

/// Weyl's dimension formula `Π_{i<j≤k} (λ_i - λ_j + j - i)/(j - i)`;
/// zero when `shape` has more than `k` rows.
pub fn weyl_dim(shape: &Partition, k: usize) -> u64 {
    let Some(w) = shape.as_weight(k) else { return 0 };
    let l = &w.entries;
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        for j in i + 1..k {
            num *= BigInt::from(l[i] + j - i - l[j]);
            den *= BigInt::from(j - i);
        }
    }
    u64::try_from(num / den).unwrap_or(u64::MAX)
}

/// Witt's character formula: dimension of the weight space `w` of the free
/// Lie algebra (equivalently, the number of Lyndon words of that content).
pub fn weight_multiplicity(w: &Weight) -> u64 {
    witt_character(w)
}

/// Multiplicities of the irreducibles `E^λ` in `F_k^{[s]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepDecomposition {
    pub k: usize,
    pub s: usize,
    /// Positive multiplicities, reverse-lexicographic in the partition.
    pub multiplicities: Vec<(Partition, u64)>,
}

#[derive(Serialize)]
struct IrrepJson<'a> {
    partition: &'a [usize],
    multiplicity: u64,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    k: usize,
    s: usize,
    irreps: Vec<IrrepJson<'a>>,
}

impl IrrepDecomposition {
    pub fn multiplicity(&self, shape: &Partition) -> u64 {
        self.multiplicities
            .iter()
            .find(|(p, _)| p == shape)
            .map_or(0, |(_, m)| *m)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.multiplicities.iter().all(|(_, m)| *m == 1)
    }

    /// `Σ mult(λ) · weyl_dim(λ, k)`.
    pub fn total_dimension(&self) -> u64 {
        self.multiplicities.iter().map(|(p, m)| m * weyl_dim(p, self.k)).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DecompositionJson {
            k: self.k,
            s: self.s,
            irreps: self
                .multiplicities
                .iter()
                .map(|(p, m)| IrrepJson { partition: p.parts(), multiplicity: *m })
                .collect(),
        })
        .expect("serialisable")
    }
}

impl fmt::Display for IrrepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "E{p}")?;
            } else {
                write!(f, "{m}*E{p}")?;
            }
        }
        Ok(())
    }
}

/// [`decompose`] with the default cap `s ≤ 8`.
pub fn decompose(k: usize, s: usize) -> Result<IrrepDecomposition> {
    decompose_capped(k, s, DEFAULT_MAX_S)
}

/// Highest-weight peeling: in an order refining dominance from the top,
/// `mult(λ) = ℓ(λ) - Σ_{μ ▷ λ} mult(μ) K(μ, λ)`.
pub fn decompose_capped(k: usize, s: usize, max_s: usize) -> Result<IrrepDecomposition> {
    if k == 0 || s == 0 {
        return Err(Error::InvalidParameter(format!(
            "decompose needs k >= 1 and s >= 1, got k={k}, s={s}"
        )));
    }
    if s > max_s {
        return Err(Error::InvalidParameter(format!(
            "s={s} exceeds the configured cap {max_s}"
        )));
    }
    let shapes: Vec<Partition> = Partition::all(s).into_iter().filter(|p| p.rows() <= k).collect();
    let mut found: Vec<(Partition, u64)> = Vec::new();
    for lam in &shapes {
        let w = lam.as_weight(k).expect("rows <= k");
        let mut m = witt_character(&w) as i128;
        for (mu, mm) in &found {
            if mu.dominates(lam) {
                m -= (*mm as i128) * kostka(mu, &w) as i128;
            }
        }
        match m.cmp(&0) {
            Ordering::Less => {
                return Err(Error::Inconsistent(format!(
                    "negative multiplicity {m} for {lam} in F_{k}^[{s}]"
                )))
            }
            Ordering::Greater => found.push((lam.clone(), m as u64)),
            Ordering::Equal => {}
        }
    }
    let d = IrrepDecomposition { k, s, multiplicities: found };
    let witt = witt_dimension(k, s)?;
    if d.total_dimension() != witt {
        return Err(Error::Inconsistent(format!(
            "dimension identity fails: {} != {witt}",
            d.total_dimension()
        )));
    }
    Ok(d)
}

/// Kraskiewicz–Weyman: the number of standard tableaux of `shape` whose
/// major index is `≡ i (mod |shape|)`. Requires `gcd(i, |shape|) = 1`.
pub fn kw_multiplicity(shape: &Partition, i: i64) -> Result<u64> {
    let s = shape.size();
    if s == 0 {
        return Err(Error::InvalidParameter("empty shape".into()));
    }
    let r = i.rem_euclid(s as i64) as usize;
    if num::integer::gcd(r, s) != 1 {
        return Err(Error::NotCoprime(i, s));
    }
    Ok(StandardTableau::all(shape)
        .iter()
        .filter(|t| major_index(t) % s == r % s)
        .count() as u64)
}

/// Klyachko's criterion for `E^λ ⊂ F_k^{[s]}`: at most `k` rows, and not a
/// single row (for `s ≥ 2`), a single column (for `s ≥ 3`), `(2,2)` or
/// `(2,2,2)`.
pub fn klyachko_occurs(shape: &Partition, k: usize) -> bool {
    let s = shape.size();
    if s == 0 || shape.rows() > k {
        return false;
    }
    let single_row = shape.rows() == 1;
    let single_col = shape.parts().iter().all(|&p| p == 1);
    if single_row && s >= 2 {
        return false;
    }
    if single_col && s >= 3 {
        return false;
    }
    !(shape.parts() == [2, 2] || shape.parts() == [2, 2, 2])
}

/// Whether every multiplicity of [`decompose`] equals one.
pub fn is_multiplicity_free(k: usize, s: usize) -> Result<bool> {
    Ok(decompose(k, s)?.is_multiplicity_free())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn w(e: &[usize]) -> Weight {
        Weight::new(e.to_vec())
    }

    #[test]
    fn partitions_in_reverse_lex_order() {
        let all: Vec<String> = Partition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(all, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(Partition::all(8).len(), 22);
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::parse("[4,1,1]").unwrap(), p(&[4, 1, 1]));
    }

    #[test]
    fn reverse_lex_refines_dominance() {
        for n in 1..=8 {
            let all = Partition::all(n);
            for (i, a) in all.iter().enumerate() {
                for b in &all[..i] {
                    assert!(!a.dominates(b) || a == b, "{a} dominates earlier {b}");
                }
            }
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[3, 2]), &w(&[1, 1, 1, 1, 1])), 5);
        assert_eq!(kostka(&p(&[2, 1]), &w(&[1, 1, 1])), 2);
        assert_eq!(kostka(&p(&[3, 2, 1]), &w(&[1; 6])), 16);
        for n in 1..=6 {
            for lam in Partition::all(n) {
                assert_eq!(kostka(&lam, &lam.as_weight(lam.rows()).unwrap()), 1);
            }
        }
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(&p(&[2, 1]), 3), 8);
        assert_eq!(weyl_dim(&p(&[1, 1]), 2), 1);
        assert_eq!(weyl_dim(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(weyl_dim(&p(&[4, 1, 1]), 3), 10);
        for k in 2..=7u64 {
            let c = (k + 2) * (k + 1) * k * (k - 1) / 24;
            assert_eq!(weyl_dim(&p(&[3, 1]), k as usize), 3 * c);
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(2, 6).unwrap();
        assert_eq!(d.to_string(), "E[5,1] + E[4,2] + E[3,3]");
        for k in 2..=5 {
            assert_eq!(decompose(k, 3).unwrap().to_string(), "E[2,1]");
        }
        let d = decompose(3, 6).unwrap();
        assert_eq!(d.to_string(), "E[5,1] + E[4,2] + 2*E[4,1,1] + E[3,3] + 3*E[3,2,1]");
        assert!(decompose(3, 9).is_err());
        assert!(decompose_capped(2, 9, 9).is_ok());
    }

    #[test]
    fn major_index_examples() {
        let t = StandardTableau::parse("1,3;2").unwrap();
        assert_eq!(major_index(&t), 1);
        let t = StandardTableau::parse("1,2;3").unwrap();
        assert_eq!(major_index(&t), 2);
        let t = StandardTableau::parse("1,2,3,4").unwrap();
        assert_eq!(major_index(&t), 0);
        assert!(StandardTableau::parse("2,1;3").is_err());
        assert!(StandardTableau::parse("1,2;1").is_err());
    }

    #[test]
    fn standard_tableau_counts_match_hook_length() {
        assert_eq!(StandardTableau::all(&p(&[3, 2, 1])).len(), 16);
        assert_eq!(StandardTableau::all(&p(&[4, 4])).len(), 14);
        assert_eq!(StandardTableau::all(&p(&[3, 3, 3])).len(), 42);
    }

    #[test]
    fn kw_examples() {
        assert_eq!(kw_multiplicity(&p(&[2, 1]), 1).unwrap(), 1);
        assert_eq!(kw_multiplicity(&p(&[3, 2, 1]), 1).unwrap(), 3);
        assert!(matches!(kw_multiplicity(&p(&[3, 2, 1]), 2), Err(Error::NotCoprime(2, 6))));
    }

    #[test]
    fn klyachko_small_cases() {
        assert!(klyachko_occurs(&p(&[1]), 2));
        assert!(klyachko_occurs(&p(&[1, 1]), 2));
        assert!(!klyachko_occurs(&p(&[2]), 2));
        assert!(!klyachko_occurs(&p(&[2, 2]), 5));
        assert!(!klyachko_occurs(&p(&[2, 2, 2]), 5));
        assert!(klyachko_occurs(&p(&[3, 2, 1]), 3));
        assert!(!klyachko_occurs(&p(&[3, 2, 1]), 2));
    }

    #[test]
    fn multiplicity_free_boundary() {
        assert!(is_multiplicity_free(3, 5).unwrap());
        assert!(!is_multiplicity_free(3, 6).unwrap());
        assert!(is_multiplicity_free(2, 6).unwrap());
        assert!(!is_multiplicity_free(2, 7).unwrap());
    }
}
