//! Twisted section spaces `H⁰(X, Ωᵏ ⊗ L_b) = ker p₀` as explicit monomial
//! bases.
//!
//! `p₀ = b·id − f*` is diagonal on monomial forms: `z^α dz_I` is an
//! eigenvector with eigenvalue `b − μ^α μ_I`. A monomial form is a section
//! iff `α + 1_I − m` lies in the relation lattice, where `b = μ^m`.

mod general;
mod oracle;

pub use general::{general_section, ParametricForm, ParametricTerm};
pub use oracle::{brute_force_kernel, sparse_kernel, sufficient_degree};

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{index_tuples, monomials_of_degree, pullback_f, IndexTuple, KForm, Monomial, Poly};
use crate::par;
use crate::rational::GaussRat;
use crate::spectrum::{classify, compute_relation_lattice, Character, HopfClass, RelationLattice, Spectrum};

/// A section problem: spectrum, form degree `k`, and character.
#[derive(Clone, Debug)]
pub struct SectionProblem {
    spectrum: Spectrum,
    lattice: RelationLattice,
    hopf_class: HopfClass,
    k: usize,
    character: Character,
}

impl SectionProblem {
    pub fn new(spectrum: Spectrum, k: usize, character: Character) -> Result<Self> {
        let n = spectrum.n();
        if n < 3 {
            return Err(Error::InvalidProblem(format!(
                "section spaces are computed for n >= 3 only (got n = {n})"
            )));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidProblem(format!("k = {k} is outside 1..={}", n - 1)));
        }
        if character.exponents().len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: character.exponents().len() });
        }
        let lattice = compute_relation_lattice(&spectrum);
        let hopf_class = classify(&spectrum, &lattice);
        Ok(SectionProblem {
            spectrum,
            lattice,
            hopf_class,
            k,
            character,
        })
    }

    /// Convenience constructor from exponents.
    pub fn with_exponents(spectrum: Spectrum, k: usize, exponents: Vec<i64>) -> Result<Self> {
        let c = Character::from_exponents(&spectrum, exponents)?;
        Self::new(spectrum, k, c)
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn lattice(&self) -> &RelationLattice {
        &self.lattice
    }

    pub fn hopf_class(&self) -> &HopfClass {
        &self.hopf_class
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.spectrum.n()
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    /// `α + 1_I − m`.
    fn weight_defect(&self, idx: &[usize], alpha: &Monomial) -> Vec<i64> {
        let mut v: Vec<i64> = alpha
            .0
            .iter()
            .zip(self.character.exponents())
            .map(|(&a, &m)| a as i64 - m)
            .collect();
        for &i in idx {
            v[i] += 1;
        }
        v
    }

    /// `b / μ_I`, the value `μ^α` must take on a section.
    fn target(&self, idx: &[usize]) -> Option<BigRational> {
        let mu = self.spectrum.exact_values()?;
        let b = self.character.value()?;
        Some(idx.iter().fold(b.clone(), |acc, &i| acc / &mu[i]))
    }
}

/// One basis element `z^α dz_I` of the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialSolution {
    pub idx: IndexTuple,
    pub alpha: Monomial,
}

impl MonomialSolution {
    pub fn to_kform(&self) -> KForm {
        let n = self.alpha.n();
        KForm::term(n, &self.idx, Poly::monomial(self.alpha.clone())).expect("valid tuple")
    }
}

impl fmt::Display for MonomialSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_kform())
    }
}

/// Conditions attached to a computed basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionNote {
    /// `k = n − 1`: computed by the same enumeration as other degrees.
    TopDegree,
    /// `b/μ_I > 1` for every tuple: no monomial can match the weight.
    UnboundedCharacter,
}

/// Sorted monomial basis of `ker p₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionBasis {
    pub solutions: Vec<MonomialSolution>,
    pub notes: Vec<SectionNote>,
}

impl SectionBasis {
    pub fn dim(&self) -> usize {
        self.solutions.len()
    }
}

/// `p₀(w) = b·w − f*w`.
pub fn p0_apply(s: &Spectrum, b: &Character, w: &KForm) -> Result<KForm> {
    let value = b.value().ok_or(Error::SymbolicModeUnsupported)?;
    let pulled = pullback_f(s, w)?;
    w.scale(&GaussRat::real(value.clone())).sub(&pulled)
}

/// Outcome of the positivity check on a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVerdict {
    pub positive: bool,
    pub reason: String,
}

/// Whether the section space is nonzero, with the structural reason.
pub fn validate_character(p: &SectionProblem) -> Result<CharacterVerdict> {
    let m = p.character.exponents();
    let k = p.k as i64;
    let verdict = match &p.hopf_class {
        HopfClass::Classical => {
            let deg: i64 = m.iter().sum();
            CharacterVerdict {
                positive: deg >= k,
                reason: format!("classical: b = mu^{deg}, nonzero iff {deg} >= k = {k}"),
            }
        }
        HopfClass::NoResonance => {
            let negative = m.iter().any(|&e| e < 0);
            let ones = m.iter().filter(|&&e| e >= 1).count() as i64;
            CharacterVerdict {
                positive: !negative && ones >= k,
                reason: if negative {
                    "no-resonance: some exponent is negative".to_string()
                } else {
                    format!("no-resonance: {ones} exponents >= 1, need at least k = {k}")
                },
            }
        }
        HopfClass::WeakNoResonance { r, perm } => {
            let block = &perm[..*r];
            let outside = &perm[*r..];
            let t: i64 = block.iter().map(|&i| m[i]).sum();
            let negative = t < 0 || outside.iter().any(|&i| m[i] < 0);
            let ones = outside.iter().filter(|&&i| m[i] >= 1).count() as i64;
            // some s ≤ min(r, t, k) of the k indices sit in the block
            let s_max = (*r as i64).min(t).min(k);
            CharacterVerdict {
                positive: !negative && k - s_max <= ones,
                reason: if negative {
                    "weak no-resonance: negative block degree or exponent".to_string()
                } else {
                    format!(
                        "weak no-resonance: block degree t = {t}, {ones} outside exponents >= 1; \
                         need k - min(r, t, k) = {} of them",
                        k - s_max
                    )
                },
            }
        }
        HopfClass::GeneralResonant => {
            let basis = solve_sections(p)?;
            CharacterVerdict {
                positive: basis.dim() > 0,
                reason: format!("general resonant: enumerated dimension {}", basis.dim()),
            }
        }
    };
    Ok(verdict)
}

/// All compositions of `d` over the coordinates `vars`, as full exponent
/// vectors added to `base`.
fn block_monomials(base: &[u32], vars: &[usize], d: u32) -> Vec<Monomial> {
    monomials_of_degree(vars.len(), d)
        .into_iter()
        .map(|c| {
            let mut e = base.to_vec();
            for (&v, &x) in vars.iter().zip(&c.0) {
                e[v] += x;
            }
            Monomial(e)
        })
        .collect()
}

/// `mᵢ − 1_I(i)` for `i ∈ coords`, `None` if any is negative.
fn outside_exponents(m: &[i64], idx: &[usize], coords: &[usize], n: usize) -> Option<Vec<u32>> {
    let mut e = vec![0u32; n];
    for &i in coords {
        let v = m[i] - idx.contains(&i) as i64;
        if v < 0 {
            return None;
        }
        e[i] = v as u32;
    }
    Some(e)
}

fn solutions_for_tuple(p: &SectionProblem, idx: &[usize]) -> Result<Vec<Monomial>> {
    let n = p.n();
    let m = p.character.exponents();
    let sols = match &p.hopf_class {
        HopfClass::NoResonance => {
            let all: Vec<usize> = (0..n).collect();
            outside_exponents(m, idx, &all, n)
                .map(|e| vec![Monomial(e)])
                .unwrap_or_default()
        }
        HopfClass::Classical => {
            let d = m.iter().sum::<i64>() - p.k as i64;
            if d < 0 {
                vec![]
            } else {
                monomials_of_degree(n, d as u32)
            }
        }
        HopfClass::WeakNoResonance { r, perm } => {
            let block = &perm[..*r];
            let outside = &perm[*r..];
            let t: i64 = block.iter().map(|&i| m[i]).sum();
            let s = idx.iter().filter(|i| block.contains(i)).count() as i64;
            match outside_exponents(m, idx, outside, n) {
                Some(base) if t - s >= 0 => block_monomials(&base, block, (t - s) as u32),
                _ => vec![],
            }
        }
        HopfClass::GeneralResonant => enumerate_resonant(p, idx)?,
    };
    Ok(sols)
}

/// Exact bounded search for `μ^α = b/μ_I`. Every `μᵢ < 1`, so a partial
/// product below the target can never recover; that prunes the box.
fn enumerate_resonant(p: &SectionProblem, idx: &[usize]) -> Result<Vec<Monomial>> {
    let mu = p
        .spectrum
        .exact_values()
        .ok_or(Error::SymbolicResonantUnsupported)?;
    let target = p.target(idx).ok_or(Error::SymbolicModeUnsupported)?;
    let n = p.n();
    let mut out = Vec::new();
    if target > BigRational::one() {
        return Ok(out);
    }
    fn rec(
        i: usize,
        prod: BigRational,
        mu: &[BigRational],
        target: &BigRational,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == mu.len() {
            out.push(cur.clone());
            return;
        }
        let mut prod = prod;
        let mut e = 0;
        while prod >= *target {
            cur.push(e);
            rec(i + 1, prod.clone(), mu, target, cur, out);
            cur.pop();
            prod *= &mu[i];
            e += 1;
        }
    }
    let mut candidates = Vec::new();
    rec(0, BigRational::one(), mu, &target, &mut Vec::with_capacity(n), &mut candidates);
    for c in candidates {
        let alpha = Monomial(c);
        if p.lattice.contains(&p.weight_defect(idx, &alpha))? {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// Monomial basis of `ker p₀`, sorted by `(I, α)`.
pub fn solve_sections(p: &SectionProblem) -> Result<SectionBasis> {
    if matches!(p.hopf_class, HopfClass::GeneralResonant) && !p.spectrum.is_exact() {
        return Err(Error::SymbolicResonantUnsupported);
    }
    let tuples = index_tuples(p.n(), p.k);
    let per_tuple = par::map(tuples.clone(), |idx| {
        solutions_for_tuple(p, &idx).map(|sols| {
            sols.into_iter()
                .map(|alpha| MonomialSolution { idx: idx.clone(), alpha })
                .collect::<Vec<_>>()
        })
    });
    let mut solutions = Vec::new();
    for chunk in per_tuple {
        solutions.extend(chunk?);
    }
    solutions.sort();
    solutions.dedup();

    let mut notes = Vec::new();
    if p.k + 1 == p.n() {
        notes.push(SectionNote::TopDegree);
    }
    if p.spectrum.is_exact()
        && tuples
            .iter()
            .all(|idx| p.target(idx).is_some_and(|t| t > BigRational::one()))
    {
        notes.push(SectionNote::UnboundedCharacter);
    }
    Ok(SectionBasis { solutions, notes })
}

/// Whether a monomial term satisfies the weight equation of the problem.
pub fn is_weight_solution(p: &SectionProblem, idx: &[usize], alpha: &Monomial) -> Result<bool> {
    p.lattice.contains(&p.weight_defect(idx, alpha))
}
