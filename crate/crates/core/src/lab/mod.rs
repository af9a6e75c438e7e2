//! Measurements on finitely generated subgroups of nilpotent Lie groups:
//! `δ_Γ(n)` over word balls, growth exponents, Liouville-twisted quotients
//! with exact decay witnesses, and a randomized check of the sublevel-set
//! estimate for polynomial maps.
//!
//! Distances are max-norms of logarithmic coordinates. Any two Riemannian
//! metrics are comparable near the identity, so this changes constants and
//! never exponents.

mod liouville;
mod remez;

pub use liouville::{
    liouville_decay, liouville_lambda, liouville_quotient, liouville_submodule, line_distance,
    LiouvilleSetup, LiouvilleWitness, DEFAULT_TRUNCATION, LIOUVILLE_CSV_HEADER,
};
pub use remez::{
    chebyshev_t, remez_check, remez_check_with, PolyMap, RemezReport, Sublevel, DEFAULT_GRID_POINTS, GRID_MARGIN,
};

use std::cmp::Ordering;
use std::collections::HashSet;
use std::hash::Hash;

use num::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bch::{inverse_code, BchFormula, FreeGroupWord};
use crate::error::{Error, Result};
use crate::free_lie::NilpotentAlgebra;
use crate::scalar::{format_decimal, log10_rational, Rational, Real, Scalar};

/// Near-laws closer than this many decimal digits to the zero threshold
/// cannot be told apart from laws.
pub const PRECISION_GUARD_DIGITS: u32 = 3;

/// A `k`-tuple of group elements, each given by its log-coordinates.
#[derive(Debug, Clone)]
pub enum TupleSpec {
    Exact {
        group: NilpotentAlgebra<Rational>,
        points: Vec<Vec<Rational>>,
    },
    /// Fixed-point coordinates with `digits` fractional decimal digits.
    Real {
        group: NilpotentAlgebra<Real>,
        points: Vec<Vec<Real>>,
        digits: u32,
    },
}

fn check_points<S: Scalar>(group: &NilpotentAlgebra<S>, points: &[Vec<S>]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("a tuple needs at least one element".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != group.dimension() {
            return Err(Error::InvalidParameter(format!(
                "tuple element {} has {} coordinates, group has dimension {}",
                i + 1,
                p.len(),
                group.dimension()
            )));
        }
    }
    Ok(())
}

impl TupleSpec {
    pub fn exact(group: NilpotentAlgebra<Rational>, points: Vec<Vec<Rational>>) -> Result<Self> {
        check_points(&group, &points)?;
        Ok(TupleSpec::Exact { group, points })
    }

    pub fn real(group: NilpotentAlgebra<Real>, points: Vec<Vec<Real>>, digits: u32) -> Result<Self> {
        check_points(&group, &points)?;
        Ok(TupleSpec::Real { group, points, digits })
    }

    /// The standard generators `e_1, …, e_k` of `F_{k,s}`.
    pub fn free_standard(k: usize, s: usize) -> Result<Self> {
        let group = NilpotentAlgebra::free(k, s)?;
        let points = (0..k)
            .map(|i| {
                let mut v = group.zero_vector();
                v[i] = Rational::one();
                v
            })
            .collect();
        Self::exact(group, points)
    }

    pub fn k(&self) -> usize {
        match self {
            TupleSpec::Exact { points, .. } => points.len(),
            TupleSpec::Real { points, .. } => points.len(),
        }
    }
}

/// One row of a `δ_Γ(n)` experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRecord {
    pub n: usize,
    /// Distinct points for exact groups, enumerated words for real groups.
    pub ball_size: u64,
    /// Nontrivial reduced words evaluating to the identity.
    pub laws_excluded: u64,
    pub delta: Rational,
    pub argmin_word: FreeGroupWord,
}

pub const DECAY_CSV_HEADER: &str = "n,ball_size,laws_excluded,delta,argmin_word";

impl DecayRecord {
    pub fn delta_text(&self) -> String {
        format_decimal(&self.delta, 60)
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.ball_size,
            self.laws_excluded,
            self.delta_text(),
            self.argmin_word
        )
    }
}

impl Serialize for DecayRecord {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Row {
            n: usize,
            ball_size: u64,
            laws_excluded: u64,
            delta: String,
            log10_delta: f64,
            argmin_word: String,
        }
        Row {
            n: self.n,
            ball_size: self.ball_size,
            laws_excluded: self.laws_excluded,
            delta: self.delta_text(),
            log10_delta: log10_rational(&self.delta),
            argmin_word: self.argmin_word.to_string(),
        }
        .serialize(ser)
    }
}

/// Best candidate of a subtree: distance, then the word in ball order.
#[derive(Debug, Clone)]
struct Best<S> {
    dist: S,
    codes: Vec<u8>,
}

fn better<S: PartialOrd>(a: &Best<S>, b: &Best<S>) -> bool {
    match a.dist.partial_cmp(&b.dist) {
        Some(Ordering::Less) => true,
        Some(Ordering::Greater) => false,
        _ => (a.codes.len(), &a.codes) < (b.codes.len(), &b.codes),
    }
}

struct Walk<S> {
    best: Option<Best<S>>,
    words: u64,
    laws: u64,
    seen: HashSet<Vec<S>>,
}

struct Ctx<'a, S: Scalar> {
    group: &'a NilpotentAlgebra<S>,
    formula: &'a BchFormula,
    letters: Vec<Vec<S>>,
    n: usize,
    dedup: bool,
    is_law: &'a (dyn Fn(&S) -> bool + Sync),
}

fn max_abs<S: Scalar>(v: &[S]) -> S {
    v.iter().map(|x| x.abs()).fold(S::zero(), |m, x| if x > m { x } else { m })
}

fn walk<S: Scalar + Hash + Eq>(ctx: &Ctx<'_, S>, prefix: &[S], codes: &mut Vec<u8>, out: &mut Walk<S>) {
    let last = *codes.last().expect("walk starts below the root");
    out.words += 1;
    let dist = max_abs(prefix);
    if (ctx.is_law)(&dist) {
        out.laws += 1;
    } else {
        let cand = Best { dist, codes: codes.clone() };
        if out.best.as_ref().is_none_or(|b| better(&cand, b)) {
            out.best = Some(cand);
        }
    }
    if ctx.dedup {
        out.seen.insert(prefix.to_vec());
    }
    if codes.len() == ctx.n {
        return;
    }
    for c in 0..ctx.letters.len() as u8 {
        if c == inverse_code(last) {
            continue;
        }
        let next = ctx.group.bch_with(ctx.formula, prefix, &ctx.letters[c as usize]);
        codes.push(c);
        walk(ctx, &next, codes, out);
        codes.pop();
    }
}

fn run<S: Scalar + Hash + Eq>(
    group: &NilpotentAlgebra<S>,
    points: &[Vec<S>],
    n: usize,
    dedup: bool,
    is_law: &(dyn Fn(&S) -> bool + Sync),
) -> Result<(u64, u64, Option<Best<S>>)> {
    let formula = BchFormula::get(group.step())?;
    let mut letters = Vec::with_capacity(2 * points.len());
    for p in points {
        letters.push(p.clone());
        letters.push(p.iter().map(|x| -x.clone()).collect());
    }
    let ctx = Ctx { group, formula: &formula, letters, n, dedup, is_law };
    let parts: Vec<Walk<S>> = (0..ctx.letters.len() as u8)
        .into_par_iter()
        .map(|c| {
            let mut out = Walk { best: None, words: 0, laws: 0, seen: HashSet::new() };
            let mut codes = vec![c];
            walk(&ctx, &ctx.letters[c as usize], &mut codes, &mut out);
            out
        })
        .collect();
    let mut best: Option<Best<S>> = None;
    let (mut words, mut laws) = (1u64, 0u64);
    let mut seen: HashSet<Vec<S>> = HashSet::new();
    if dedup {
        seen.insert(group.zero_vector());
    }
    for part in parts {
        words += part.words;
        laws += part.laws;
        if let Some(b) = part.best {
            if best.as_ref().is_none_or(|cur| better(&b, cur)) {
                best = Some(b);
            }
        }
        seen.extend(part.seen);
    }
    let size = if dedup { seen.len() as u64 } else { words };
    Ok((size, laws, best))
}

/// `δ_Γ(n)`: the least distance to the identity over nontrivial values of
/// the reduced words of length at most `n`, evaluated at the tuple.
///
/// Exact groups use exact zero tests. Real groups treat values below
/// `10^(-digits/2)` as laws; a minimum within [`PRECISION_GUARD_DIGITS`]
/// of that threshold raises [`Error::PrecisionExhausted`].
pub fn delta_gamma(t: &TupleSpec, n: usize) -> Result<DecayRecord> {
    if n == 0 {
        return Err(Error::InvalidParameter("delta_gamma needs n >= 1".into()));
    }
    let (ball_size, laws, best) = match t {
        TupleSpec::Exact { group, points } => {
            let (size, laws, best) = run(group, points, n, true, &|x: &Rational| x.is_zero())?;
            (size, laws, best.map(|b| (b.dist, b.codes)))
        }
        TupleSpec::Real { group, points, digits } => {
            let half = digits / 2;
            let threshold = Real::from_rational(&pow10_neg(half), *digits);
            let is_law = move |x: &Real| *x < threshold;
            let (size, laws, best) = run(group, points, n, false, &is_law)?;
            let best = best.map(|b| (b.dist.to_rational(), b.codes));
            if let Some((d, _)) = &best {
                if *d < pow10_neg(half.saturating_sub(PRECISION_GUARD_DIGITS)) {
                    return Err(Error::PrecisionExhausted {
                        log10_distance: log10_rational(d),
                        digits: *digits,
                    });
                }
            }
            (size, laws, best)
        }
    };
    let (delta, codes) = best.ok_or_else(|| {
        Error::Degenerate(format!("every word of length <= {n} evaluates to the identity"))
    })?;
    Ok(DecayRecord {
        n,
        ball_size,
        laws_excluded: laws,
        delta,
        argmin_word: FreeGroupWord::from_codes(&codes),
    })
}

fn pow10_neg(e: u32) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(10u32).pow(e))
}

/// `δ_Γ(n)` for `n = 1..=n_max`.
pub fn delta_series(t: &TupleSpec, n_max: usize) -> Result<Vec<DecayRecord>> {
    (1..=n_max).map(|n| delta_gamma(t, n)).collect()
}

/// Bass–Guivarc'h growth exponent `Σ i · ranks[i-1]`.
pub fn bass_guivarch_exponent(ranks: &[u64]) -> u64 {
    ranks.iter().enumerate().map(|(i, r)| (i as u64 + 1) * r).sum()
}

/// Least-squares slope of `log δ(n)` against `-tau · log n`, so that
/// `δ(n) ≈ c · n^(-tau·β)`. Records with `δ ≤ 0` are skipped.
pub fn fit_beta(records: &[DecayRecord], tau: u64) -> Result<f64> {
    if tau == 0 {
        return Err(Error::InvalidParameter("tau must be positive".into()));
    }
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.n >= 1 && r.delta > Rational::zero())
        .map(|r| (-(tau as f64) * (r.n as f64).ln(), log10_rational(&r.delta) * std::f64::consts::LN_10))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "fit_beta needs at least 3 records with positive delta, got {}",
            pts.len()
        )));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all records share the same n".into()));
    }
    Ok(sxy / sxx)
}
