//! Common zero set of the coefficients of a k-form on `W = ℂⁿ ∖ {0}`.
//!
//! `W` splits into torus orbits `O_T = {z_T = 0, zᵢ ≠ 0 for i ∉ T}` for
//! proper subsets `T`. On `O_T` a monomial never vanishes, so each orbit is
//! either free of singular points (some coefficient restricts to a single
//! monomial), contained in the singular set (every coefficient restricts to
//! zero), or cut by the non-monomial parts of the restricted coefficients.
//! Monomial-coefficient forms only ever hit the first two cases and are
//! handled exactly with minimal transversals.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Poly};
use crate::rational::{rat, GaussRat};

/// Random points drawn per undetermined orbit.
pub const SAMPLES_PER_STRATUM: usize = 64;

/// `{zᵢ = 0 : i ∈ S} ∖ {0}`, with 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoordinateStratum {
    pub zero_set: Vec<usize>,
    pub codim: usize,
}

impl CoordinateStratum {
    pub fn from_mask(mask: u64) -> Self {
        let zero_set: Vec<usize> = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        CoordinateStratum {
            codim: zero_set.len(),
            zero_set,
        }
    }
}

/// An orbit whose singular part is cut out by non-monomial factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledStratum {
    /// Coordinates set to zero (1-based).
    pub zero_set: Vec<usize>,
    /// Distinct non-monomial factors that must vanish there.
    pub factors: usize,
    /// Generic Jacobian rank of those factors at the sampled points.
    pub generic_rank: usize,
    /// Estimated codimension in ℂⁿ of the singular part of this orbit;
    /// `None` when it is expected to be empty on `W`.
    pub codim_estimate: Option<usize>,
    /// `true` when nonemptiness is certain (one factor, which always has
    /// zeros on the torus).
    pub certain: bool,
}

/// Verdict for forms with non-monomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbabilisticVerdict {
    /// Orbits on which every coefficient vanishes identically (exact).
    pub exact_strata: Vec<CoordinateStratum>,
    pub sampled: Vec<SampledStratum>,
    pub samples_per_stratum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularLocus {
    Exact(Vec<CoordinateStratum>),
    Probabilistic(ProbabilisticVerdict),
}

impl SingularLocus {
    /// Smallest codimension of a singular component; `None` when empty.
    pub fn codim(&self) -> Option<usize> {
        match self {
            SingularLocus::Exact(strata) => strata.iter().map(|s| s.codim).min(),
            SingularLocus::Probabilistic(v) => v
                .exact_strata
                .iter()
                .map(|s| s.codim)
                .chain(v.sampled.iter().filter_map(|s| s.codim_estimate))
                .min(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.codim().is_none()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SingularLocus::Exact(_))
    }
}

/// Minimal hitting sets of a family of nonempty sets (Berge's algorithm).
fn minimal_transversals(family: &[u64]) -> Vec<u64> {
    let mut current: Vec<u64> = vec![0];
    for &edge in family {
        let mut next: BTreeSet<u64> = BTreeSet::new();
        for &t in &current {
            if t & edge != 0 {
                next.insert(t);
            } else {
                let mut bits = edge;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    next.insert(t | b);
                    bits ^= b;
                }
            }
        }
        let cands: Vec<u64> = next.into_iter().collect();
        current = cands
            .iter()
            .copied()
            .filter(|&t| !cands.iter().any(|&u| u != t && u & t == u))
            .collect();
    }
    current
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn monomial_locus(supports: &[u64], n: usize) -> Vec<CoordinateStratum> {
    if supports.contains(&0) {
        return vec![];
    }
    let mut strata: Vec<CoordinateStratum> = minimal_transversals(supports)
        .into_iter()
        .filter(|&t| t != full_mask(n))
        .map(CoordinateStratum::from_mask)
        .collect();
    strata.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.zero_set.cmp(&b.zero_set)));
    strata
}

/// Scale so the grlex-leading coefficient is one, after removing content.
fn primitive_part(p: &Poly) -> Poly {
    let content = p.monomial_content().expect("nonzero");
    let q = p.div_monomial(&content);
    let lead = q.terms().last().map(|(_, c)| c.clone()).expect("nonzero");
    q.scale(&lead.inv().expect("nonzero"))
}

fn random_point(rng: &mut StdRng, n: usize, zero_mask: u64) -> Vec<GaussRat> {
    (0..n)
        .map(|i| {
            if zero_mask >> i & 1 == 1 {
                GaussRat::zero()
            } else {
                // nonzero Gaussian rational with small height
                loop {
                    let re = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
                    let im = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
                    let z = GaussRat::new(re, im);
                    if !z.is_zero() {
                        break z;
                    }
                }
            }
        })
        .collect()
}

/// Rank over ℚ(i) of a dense matrix.
fn rank(mut rows: Vec<Vec<GaussRat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let q = &rows[i][c] * &inv;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, y) in bottom[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                *x = &*x - &(&q * y);
            }
        }
        r += 1;
    }
    r
}

fn sample_orbit(factors: &[Poly], n: usize, mask: u64, rng: &mut StdRng) -> (usize, Option<usize>) {
    let free: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
    let mut best = 0;
    for _ in 0..SAMPLES_PER_STRATUM {
        let pt = random_point(rng, n, mask);
        let jac: Vec<Vec<GaussRat>> = factors
            .iter()
            .map(|f| free.iter().map(|&v| f.deriv(v).eval(&pt)).collect())
            .collect();
        best = best.max(rank(jac));
    }
    let codim = mask.count_ones() as usize + best;
    (best, (codim < n).then_some(codim))
}

/// Singular set of `w` as coordinate strata, exact whenever every
/// coefficient restricts to a monomial or zero on every orbit.
pub fn singular_locus(w: &KForm) -> Result<SingularLocus> {
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = w.n();
    let coeffs: Vec<&Poly> = w.terms().map(|(_, g)| g).collect();
    if coeffs.iter().all(|g| g.as_monomial().is_some()) {
        let supports: Vec<u64> = coeffs
            .iter()
            .map(|g| g.as_monomial().expect("monomial").0.support_mask())
            .collect();
        return Ok(SingularLocus::Exact(monomial_locus(&supports, n)));
    }
    if n > 20 {
        return Err(Error::InvalidForm(format!(
            "singular locus of non-monomial forms is limited to n <= 20 (got {n})"
        )));
    }

    let mut contained: Vec<u64> = Vec::new();
    let mut pending: Vec<(u64, Vec<Poly>)> = Vec::new();
    // orbits in order of increasing codimension
    let mut masks: Vec<u64> = (0..full_mask(n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        // orbits inside a contained stratum add nothing
        if contained.iter().any(|&c| c & !mask == 0) {
            continue;
        }
        let restricted: Vec<Poly> = coeffs
            .iter()
            .map(|g| g.restrict_zero(mask))
            .filter(|g| !g.is_zero())
            .collect();
        if restricted.is_empty() {
            contained.push(mask);
            continue;
        }
        if restricted.iter().any(|g| g.as_monomial().is_some()) {
            continue;
        }
        let mut factors: Vec<Poly> = restricted.iter().map(primitive_part).collect();
        factors.sort_by_key(|f| f.to_string());
        factors.dedup();
        pending.push((mask, factors));
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0f51);
    let mut sampled = Vec::new();
    for (mask, factors) in pending {
        if contained.iter().any(|&c| c & !mask == 0) {
            continue;
        }
        let zero_set = CoordinateStratum::from_mask(mask).zero_set;
        if factors.len() == 1 {
            sampled.push(SampledStratum {
                zero_set,
                factors: 1,
                generic_rank: 1,
                codim_estimate: Some(mask.count_ones() as usize + 1),
                certain: true,
            });
            continue;
        }
        let (generic_rank, codim_estimate) = sample_orbit(&factors, n, mask, &mut rng);
        sampled.push(SampledStratum {
            zero_set,
            factors: factors.len(),
            generic_rank,
            codim_estimate,
            certain: false,
        });
    }
    let mut exact_strata: Vec<CoordinateStratum> =
        contained.into_iter().map(CoordinateStratum::from_mask).collect();
    exact_strata.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.zero_set.cmp(&b.zero_set)));
    Ok(SingularLocus::Probabilistic(ProbabilisticVerdict {
        exact_strata,
        sampled,
        samples_per_stratum: SAMPLES_PER_STRATUM,
    }))
}

/// `Sing(w) ∩ W = ∅`; vanishing only at the origin counts as regular.
pub fn is_regular(w: &KForm) -> Result<bool> {
    Ok(singular_locus(w)?.is_empty())
}

/// Brute-force reference for monomial coefficients: every coordinate
/// subspace `{z_T = 0}` on which all coefficients vanish, minimized.
pub fn monomial_strata_brute_force(w: &KForm) -> Vec<CoordinateStratum> {
    let n = w.n();
    let supports: Vec<u64> = w
        .terms()
        .map(|(_, g)| {
            g.terms()
                .map(|(m, _)| m.support_mask())
                .fold(full_mask(n), |a, b| a & b)
        })
        .collect();
    let vanishing: Vec<u64> = (0..full_mask(n))
        .filter(|&t| supports.iter().all(|&s| s & t != 0))
        .collect();
    let mut out: Vec<CoordinateStratum> = vanishing
        .iter()
        .copied()
        .filter(|&t| !vanishing.iter().any(|&u| u != t && u & t == u))
        .map(CoordinateStratum::from_mask)
        .collect();
    out.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.zero_set.cmp(&b.zero_set)));
    out
}

pub(crate) fn is_constant_single_term(w: &KForm) -> bool {
    w.num_terms() == 1
        && w
            .terms()
            .all(|(_, g)| g.as_monomial().is_some_and(|(m, _)| m.is_one()))
}
