//! Grid check of the sublevel-set estimate
//! `|{x ∈ B : ‖f(x)‖ ≤ ε}| ≤ 4·n1·(ε/‖f‖_B)^(1/d)·|B|` for random polynomial
//! maps on the unit cube, together with the scalar Remez-type inequality it
//! is derived from.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default number of grid points per trial (rounded up to a power of the
/// per-axis count).
pub const DEFAULT_GRID_POINTS: usize = 1_000_000;

/// Allowed excess of the observed ratio over 1, absorbing grid error.
pub const GRID_MARGIN: f64 = 0.05;

/// `T_d(x)` by the three-term recurrence.
pub fn chebyshev_t(d: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if d == 0 {
        return a;
    }
    for _ in 1..d {
        let c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    b
}

/// A polynomial map `R^n1 → R^n2` of degree at most `d`. Each component is
/// a dense coefficient tensor indexed by exponents `(a_1, …, a_n1)` in
/// mixed radix `d + 1`, `a_1` most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    pub n1: usize,
    pub d: usize,
    pub components: Vec<Vec<f64>>,
}

/// Grid estimates for one `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sublevel {
    /// Fraction of grid points with `‖f(x)‖_∞ ≤ ε`.
    pub measure: f64,
    /// Largest `‖f(x)‖_∞` on the grid.
    pub sup: f64,
    /// Same two quantities for the first component alone.
    pub first_measure: f64,
    pub first_sup: f64,
}

fn exponents(n1: usize, d: usize, mut idx: usize) -> Vec<usize> {
    let mut e = vec![0; n1];
    for slot in e.iter_mut().rev() {
        *slot = idx % (d + 1);
        idx /= d + 1;
    }
    e
}

impl PolyMap {
    pub fn new(n1: usize, d: usize, components: Vec<Vec<f64>>) -> Result<Self> {
        let size = (d + 1).pow(n1 as u32);
        if n1 == 0 || components.is_empty() || components.iter().any(|c| c.len() != size) {
            return Err(Error::InvalidParameter(format!(
                "each component needs {size} coefficients for n1={n1}, d={d}"
            )));
        }
        Ok(PolyMap { n1, d, components })
    }

    /// Coefficients uniform in `[-1, 1]` on every monomial of total degree
    /// at most `d`.
    pub fn random(rng: &mut impl Rng, n1: usize, n2: usize, d: usize) -> Self {
        let size = (d + 1).pow(n1 as u32);
        let components = (0..n2)
            .map(|_| {
                (0..size)
                    .map(|i| {
                        if exponents(n1, d, i).iter().sum::<usize>() <= d {
                            rng.random_range(-1.0..=1.0)
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMap { n1, d, components }
    }

    pub fn n2(&self) -> usize {
        self.components.len()
    }

    /// Total degree actually present.
    pub fn degree(&self) -> usize {
        let size = self.components[0].len();
        (0..size)
            .filter(|&i| self.components.iter().any(|c| c[i] != 0.0))
            .map(|i| exponents(self.n1, self.d, i).iter().sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0.0)
                    .map(|(i, v)| {
                        let e = exponents(self.n1, self.d, i);
                        v * e.iter().zip(x).map(|(&a, &t)| t.powi(a as i32)).product::<f64>()
                    })
                    .sum()
            })
            .collect()
    }

    /// Values of one component on the midpoint grid with `per_axis` points
    /// per coordinate, ordered with the first coordinate slowest. Variables
    /// are contracted one at a time, last first.
    fn grid_values(&self, comp: usize, per_axis: usize) -> Vec<f64> {
        let r = self.d + 1;
        let pw: Vec<Vec<f64>> = (0..per_axis)
            .map(|g| {
                let t = (g as f64 + 0.5) / per_axis as f64;
                let mut row = vec![1.0; r];
                for a in 1..r {
                    row[a] = row[a - 1] * t;
                }
                row
            })
            .collect();
        let mut cur = self.components[comp].clone();
        let mut suffix = 1usize;
        for _ in 0..self.n1 {
            let prefix = cur.len() / (r * suffix);
            let mut next = vec![0.0; prefix * per_axis * suffix];
            for p in 0..prefix {
                for (g, powers) in pw.iter().enumerate() {
                    let out = &mut next[(p * per_axis + g) * suffix..(p * per_axis + g + 1) * suffix];
                    for (a, &xa) in powers.iter().enumerate() {
                        let src = &cur[(p * r + a) * suffix..(p * r + a + 1) * suffix];
                        for (o, s) in out.iter_mut().zip(src) {
                            *o += xa * s;
                        }
                    }
                }
            }
            cur = next;
            suffix *= per_axis;
        }
        cur
    }

    /// Grid estimates of the sublevel measure and sup-norm on `[0,1]^n1`.
    pub fn sublevel(&self, eps: f64, per_axis: usize) -> Sublevel {
        let mut norm: Vec<f64> = Vec::new();
        let mut first = Vec::new();
        for comp in 0..self.n2() {
            let vals = self.grid_values(comp, per_axis);
            if comp == 0 {
                norm = vals.iter().map(|v| v.abs()).collect();
                first = norm.clone();
            } else {
                for (m, v) in norm.iter_mut().zip(&vals) {
                    *m = m.max(v.abs());
                }
            }
        }
        let total = norm.len() as f64;
        let frac = |v: &[f64]| v.iter().filter(|&&x| x <= eps).count() as f64 / total;
        let sup = |v: &[f64]| v.iter().cloned().fold(0.0, f64::max);
        Sublevel {
            measure: frac(&norm),
            sup: sup(&norm),
            first_measure: frac(&first),
            first_sup: sup(&first),
        }
    }
}

/// `4·n1·(ε/‖f‖_B)^(1/d)`, the bound on the relative sublevel measure.
pub fn sublevel_bound(n1: usize, d: usize, eps: f64, sup: f64) -> f64 {
    4.0 * n1 as f64 * (eps / sup).powf(1.0 / d as f64)
}

/// Right-hand side of the Remez-type inequality for relative sublevel
/// measure `eta`; infinite when `eta = 0`.
pub fn remez_rhs(n1: usize, d: usize, eps: f64, eta: f64) -> f64 {
    if eta <= 0.0 {
        return f64::INFINITY;
    }
    let z = (1.0 - eta.min(1.0)).powf(1.0 / n1 as f64);
    eps * chebyshev_t(d, (1.0 + z) / (1.0 - z))
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RemezReport {
    pub trials: usize,
    /// Largest `measure / bound` over all trials.
    pub max_ratio: f64,
    /// Trials whose ratio exceeds `1 + GRID_MARGIN`.
    pub violations: usize,
    /// Largest `sup|f_1| / remez_rhs` for the scalar inequality.
    pub remez_max_ratio: f64,
    pub remez_violations: usize,
    pub seed: u64,
    pub d_max: usize,
    pub n1_max: usize,
    pub grid_points: usize,
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    ratio: f64,
    remez_ratio: f64,
}

fn per_axis(n1: usize, grid_points: usize) -> usize {
    let mut n = (grid_points as f64).powf(1.0 / n1 as f64).floor() as usize;
    while n.pow(n1 as u32) < grid_points {
        n += 1;
    }
    n.max(1)
}

fn run_trial(seed: u64, index: u64, d_max: usize, n1_max: usize, grid_points: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n1 = rng.random_range(1..=n1_max);
    let d = rng.random_range(1..=d_max);
    let n2 = rng.random_range(1..=2);
    let f = PolyMap::random(&mut rng, n1, n2, d);
    let u: f64 = rng.random_range(1.0..=6.0);
    let eps = 10f64.powf(-u);
    let est = f.sublevel(eps, per_axis(n1, grid_points));
    let ratio = if est.sup > 0.0 { est.measure / sublevel_bound(n1, d, eps, est.sup) } else { 0.0 };
    let rhs = remez_rhs(n1, d, eps, est.first_measure);
    let remez_ratio = if rhs.is_finite() { est.first_sup / rhs } else { 0.0 };
    Trial { ratio, remez_ratio }
}

/// Seeded random trials with the default grid.
pub fn remez_check(trials: usize, seed: u64, d_max: usize, n1_max: usize) -> Result<RemezReport> {
    remez_check_with(trials, seed, d_max, n1_max, DEFAULT_GRID_POINTS)
}

/// Trial `i` draws from a ChaCha8 stream `i` under `seed`, so results do not
/// depend on scheduling.
pub fn remez_check_with(
    trials: usize,
    seed: u64,
    d_max: usize,
    n1_max: usize,
    grid_points: usize,
) -> Result<RemezReport> {
    if trials == 0 || d_max == 0 || n1_max == 0 || grid_points == 0 {
        return Err(Error::InvalidParameter(
            "trials, d_max, n1_max and grid size must be positive".into(),
        ));
    }
    let results: Vec<Trial> = (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(seed, i, d_max, n1_max, grid_points))
        .collect();
    let limit = 1.0 + GRID_MARGIN;
    Ok(RemezReport {
        trials,
        max_ratio: results.iter().map(|t| t.ratio).fold(0.0, f64::max),
        violations: results.iter().filter(|t| t.ratio > limit).count(),
        remez_max_ratio: results.iter().map(|t| t.remez_ratio).fold(0.0, f64::max),
        remez_violations: results.iter().filter(|t| t.remez_ratio > limit).count(),
        seed,
        d_max,
        n1_max,
        grid_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_examples() {
        for d in 0..=10 {
            assert_eq!(chebyshev_t(d, 1.0), 1.0);
        }
        assert_eq!(chebyshev_t(3, 2.0), 26.0);
        assert_eq!(chebyshev_t(2, 0.0), -1.0);
        for d in 0..8 {
            let x: f64 = 0.3;
            assert!((chebyshev_t(d, x) - (d as f64 * x.acos()).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn monomials_on_the_interval() {
        // f(x) = x, ε = 0.1
        let f = PolyMap::new(1, 1, vec![vec![0.0, 1.0]]).unwrap();
        let est = f.sublevel(0.1, 1_000_000);
        assert!((est.measure - 0.1).abs() < 1e-5);
        assert!(est.measure <= sublevel_bound(1, 1, 0.1, est.sup));
        // f(x) = x², ε = 0.01
        let f = PolyMap::new(1, 2, vec![vec![0.0, 0.0, 1.0]]).unwrap();
        let est = f.sublevel(0.01, 1_000_000);
        assert!((est.measure - 0.1).abs() < 1e-5);
        assert!((sublevel_bound(1, 2, 0.01, 1.0) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn grid_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = PolyMap::random(&mut rng, 3, 2, 3);
        let n = 5;
        for c in 0..2 {
            let vals = f.grid_values(c, n);
            for (idx, v) in vals.iter().enumerate() {
                let x: Vec<f64> = [idx / 25, (idx / 5) % 5, idx % 5]
                    .iter()
                    .map(|&g| (g as f64 + 0.5) / n as f64)
                    .collect();
                assert!((v - f.eval(&x)[c]).abs() < 1e-12);
            }
        }
        assert!(f.degree() <= 3);
    }

    #[test]
    fn small_run_is_deterministic() {
        let a = remez_check_with(20, 42, 4, 2, 10_000).unwrap();
        let b = remez_check_with(20, 42, 4, 2, 10_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
    }
}
