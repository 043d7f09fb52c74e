//! Diagonal contraction data, its multiplicative relation lattice, and the
//! resonance classification of the Hopf manifold.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::rational::pow_i;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigenvalues {
    /// Positive rationals strictly inside (0, 1).
    Exact(Vec<BigRational>),
    /// One class label per coordinate. Equal labels assert equal
    /// eigenvalues; distinct classes are asserted to carry no relations.
    Symbolic(Vec<u32>),
}

/// The eigenvalues `μ₁, …, μₙ` of the contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    eigen: Eigenvalues,
}

impl Spectrum {
    pub fn exact(mu: Vec<BigRational>) -> Result<Self> {
        check_dim(mu.len())?;
        for (i, m) in mu.iter().enumerate() {
            if !m.is_positive() || *m >= BigRational::one() {
                return Err(Error::InvalidSpectrum(format!(
                    "mu[{}] = {m} is not in the open interval (0, 1)",
                    i + 1
                )));
            }
        }
        Ok(Spectrum {
            eigen: Eigenvalues::Exact(mu),
        })
    }

    pub fn symbolic(classes: Vec<u32>) -> Result<Self> {
        check_dim(classes.len())?;
        Ok(Spectrum {
            eigen: Eigenvalues::Symbolic(classes),
        })
    }

    pub fn n(&self) -> usize {
        match &self.eigen {
            Eigenvalues::Exact(v) => v.len(),
            Eigenvalues::Symbolic(v) => v.len(),
        }
    }

    pub fn eigenvalues(&self) -> &Eigenvalues {
        &self.eigen
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.eigen, Eigenvalues::Exact(_))
    }

    pub fn exact_values(&self) -> Option<&[BigRational]> {
        match &self.eigen {
            Eigenvalues::Exact(v) => Some(v),
            Eigenvalues::Symbolic(_) => None,
        }
    }

    /// Reorder coordinates: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Spectrum {
        let eigen = match &self.eigen {
            Eigenvalues::Exact(v) => Eigenvalues::Exact(perm.iter().map(|&p| v[p].clone()).collect()),
            Eigenvalues::Symbolic(v) => Eigenvalues::Symbolic(perm.iter().map(|&p| v[p]).collect()),
        };
        Spectrum { eigen }
    }

    /// `∏ μᵢ^{eᵢ}` in exact mode.
    pub fn monomial_value(&self, exps: &[i64]) -> Option<BigRational> {
        let mu = self.exact_values()?;
        Some(
            mu.iter()
                .zip(exps)
                .fold(BigRational::one(), |acc, (m, &e)| acc * pow_i(m, e)),
        )
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSpectrum(format!("dimension n = {n}, need n >= 2")));
    }
    if n > 63 {
        return Err(Error::InvalidSpectrum(format!("dimension n = {n} exceeds 63")));
    }
    Ok(())
}

/// `{r ∈ Zⁿ : ∏ μᵢ^{rᵢ} = 1}` with a canonical HNF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationLattice {
    n: usize,
    basis: Vec<Vec<i64>>,
}

impl RelationLattice {
    pub fn from_generators(n: usize, gens: &[Vec<i64>]) -> Self {
        RelationLattice {
            n,
            basis: lattice::hnf(gens, n),
        }
    }

    pub fn trivial(n: usize) -> Self {
        RelationLattice { n, basis: vec![] }
    }

    /// Lattice generated by `eᵢ − eⱼ` for `i, j` in the same block.
    pub fn difference_lattice(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut gens = Vec::new();
        for b in blocks {
            for w in b.windows(2) {
                let mut v = vec![0; n];
                v[w[0]] = 1;
                v[w[1]] = -1;
                gens.push(v);
            }
        }
        Self::from_generators(n, &gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.len() });
        }
        Ok(lattice::is_member(&self.basis, v))
    }

    /// Canonical representative of the coset `v + L`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        lattice::reduce_mod(&self.basis, v)
    }

    /// Reorder coordinates as in [`Spectrum::permuted`].
    pub fn permuted(&self, perm: &[usize]) -> RelationLattice {
        let gens: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|r| perm.iter().map(|&p| r[p]).collect())
            .collect();
        Self::from_generators(self.n, &gens)
    }
}

/// Resonance class of the Hopf manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HopfClass {
    Classical,
    NoResonance,
    /// One block of `r` equal eigenvalues and no other relations. `perm`
    /// lists the original coordinates (0-based) with the block first.
    WeakNoResonance { r: usize, perm: Vec<usize> },
    GeneralResonant,
}

impl HopfClass {
    pub fn name(&self) -> &'static str {
        match self {
            HopfClass::Classical => "Classical",
            HopfClass::NoResonance => "NoResonance",
            HopfClass::WeakNoResonance { .. } => "WeakNoResonance",
            HopfClass::GeneralResonant => "GeneralResonant",
        }
    }

    /// Coordinates of the repeated block in the weak case.
    pub fn block(&self) -> Option<&[usize]> {
        match self {
            HopfClass::WeakNoResonance { r, perm } => Some(&perm[..*r]),
            _ => None,
        }
    }
}

impl fmt::Display for HopfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfClass::WeakNoResonance { r, perm } => {
                let p: Vec<String> = perm.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "WeakNoResonance(r={r}, perm=[{}])", p.join(","))
            }
            other => write!(f, "{}", other.name()),
        }
    }
}

/// Split the numerators and denominators into a pairwise coprime base.
fn coprime_base(values: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = values.iter().filter(|v| !v.is_one()).cloned().collect();
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let a = &base[i] / &g;
                    let b = &base[j] / &g;
                    let mut next: Vec<BigInt> = base
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, v)| v.clone())
                        .collect();
                    next.extend([a, b, g].into_iter().filter(|v| !v.is_one()));
                    next.sort();
                    next.dedup();
                    base = next;
                    continue 'outer;
                }
            }
        }
        return base;
    }
}

fn valuation(mut x: BigInt, p: &BigInt) -> i64 {
    let mut e = 0;
    while (&x % p).is_zero() {
        x /= p;
        e += 1;
    }
    e
}

/// Exponents of `value` over a coprime base; `None` if `value` does not
/// factor over it.
fn exponent_vector(value: &BigRational, base: &[BigInt]) -> Option<Vec<i64>> {
    let mut num = value.numer().abs();
    let mut den = value.denom().abs();
    let mut out = Vec::with_capacity(base.len());
    for p in base {
        let a = valuation(num.clone(), p);
        let b = valuation(den.clone(), p);
        num /= num_traits::pow(p.clone(), a as usize);
        den /= num_traits::pow(p.clone(), b as usize);
        out.push(a - b);
    }
    (num.is_one() && den.is_one()).then_some(out)
}

/// Exponent matrix (rows = base elements, columns = eigenvalues).
fn exponent_matrix(mu: &[BigRational], extra: &[&BigRational]) -> (Vec<BigInt>, Vec<Vec<i64>>) {
    let mut parts = Vec::new();
    for m in mu.iter().chain(extra.iter().copied()) {
        parts.push(m.numer().abs());
        parts.push(m.denom().abs());
    }
    let base = coprime_base(&parts);
    let cols: Vec<Vec<i64>> = mu
        .iter()
        .map(|m| exponent_vector(m, &base).expect("factors over its own base"))
        .collect();
    let rows = (0..base.len())
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    (base, rows)
}

/// Integer lattice of multiplicative relations among the eigenvalues.
pub fn compute_relation_lattice(s: &Spectrum) -> RelationLattice {
    let n = s.n();
    match s.eigenvalues() {
        Eigenvalues::Exact(mu) => {
            let (_, m) = exponent_matrix(mu, &[]);
            RelationLattice {
                n,
                basis: lattice::integer_kernel(&m, n),
            }
        }
        Eigenvalues::Symbolic(classes) => {
            RelationLattice::difference_lattice(n, &label_blocks(classes))
        }
    }
}

fn label_blocks(classes: &[u32]) -> Vec<Vec<usize>> {
    let mut labels: Vec<u32> = classes.to_vec();
    labels.sort();
    labels.dedup();
    let mut blocks: Vec<Vec<usize>> = labels
        .iter()
        .map(|l| (0..classes.len()).filter(|&i| classes[i] == *l).collect())
        .collect();
    blocks.sort();
    blocks
}

/// Coordinates grouped by `eᵢ − eⱼ ∈ L`, each block sorted, blocks ordered
/// by smallest member.
pub fn equality_blocks(l: &RelationLattice) -> Vec<Vec<usize>> {
    let n = l.n();
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut block = vec![i];
        assigned[i] = true;
        for j in i + 1..n {
            if assigned[j] {
                continue;
            }
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            if lattice::is_member(l.basis(), &v) {
                block.push(j);
                assigned[j] = true;
            }
        }
        blocks.push(block);
    }
    blocks
}

/// Resonance class read off the relation lattice.
pub fn classify(s: &Spectrum, l: &RelationLattice) -> HopfClass {
    let n = s.n();
    if l.is_trivial() {
        return HopfClass::NoResonance;
    }
    let blocks = equality_blocks(l);
    if *l != RelationLattice::difference_lattice(n, &blocks) {
        return HopfClass::GeneralResonant;
    }
    let big: Vec<&Vec<usize>> = blocks.iter().filter(|b| b.len() > 1).collect();
    match big.as_slice() {
        [b] if b.len() == n => HopfClass::Classical,
        [b] => {
            let mut perm: Vec<usize> = b.to_vec();
            perm.extend((0..n).filter(|i| !b.contains(i)));
            HopfClass::WeakNoResonance { r: b.len(), perm }
        }
        _ => HopfClass::GeneralResonant,
    }
}

/// Membership test with a length check.
pub fn lattice_member(l: &RelationLattice, v: &[i64]) -> Result<bool> {
    l.contains(v)
}

/// A line-bundle character `b = ∏ μᵢ^{mᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    exponents: Vec<i64>,
    value: Option<BigRational>,
}

impl Character {
    /// In exact mode the value is computed from the exponents.
    pub fn from_exponents(s: &Spectrum, exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() != s.n() {
            return Err(Error::DimensionMismatch { expected: s.n(), found: exponents.len() });
        }
        let value = s.monomial_value(&exponents);
        Ok(Character { exponents, value })
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn value(&self) -> Option<&BigRational> {
        self.value.as_ref()
    }

    /// Same character iff the exponent difference is a relation.
    pub fn equivalent(&self, other: &Character, l: &RelationLattice) -> Result<bool> {
        let diff: Vec<i64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a - b)
            .collect();
        l.contains(&diff)
    }

    pub fn permuted(&self, s_permuted: &Spectrum, perm: &[usize]) -> Character {
        Character {
            exponents: perm.iter().map(|&p| self.exponents[p]).collect(),
            value: s_permuted.monomial_value(&perm.iter().map(|&p| self.exponents[p]).collect::<Vec<_>>()),
        }
    }
}

/// Solve `∏ μᵢ^{mᵢ} = value` over the integers, reduced to the canonical
/// representative modulo the relation lattice.
pub fn character_from_value(s: &Spectrum, value: &BigRational) -> Result<Character> {
    let mu = s.exact_values().ok_or(Error::SymbolicModeUnsupported)?;
    if !value.is_positive() {
        return Err(Error::NotMonomialCharacter);
    }
    let n = s.n();
    let (base, m) = exponent_matrix(mu, &[value]);
    let target = exponent_vector(value, &base).ok_or(Error::NotMonomialCharacter)?;
    let x = if base.is_empty() {
        vec![0; n]
    } else {
        lattice::solve(&m, n, &target).ok_or(Error::NotMonomialCharacter)?
    };
    let l = RelationLattice {
        n,
        basis: lattice::integer_kernel(&m, n),
    };
    let exps = l.reduce(&x);
    debug_assert_eq!(s.monomial_value(&exps).as_ref(), Some(value));
    Ok(Character {
        exponents: exps,
        value: Some(value.clone()),
    })
}

/// Sum of exponents over a coordinate set, i.e. the degree a block sees.
pub fn block_degree(exps: &[i64], block: &[usize]) -> i64 {
    block.iter().map(|&i| exps[i]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn exact(v: &[(i64, i64)]) -> Spectrum {
        Spectrum::exact(v.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let s = exact(&[(1, 2), (1, 4), (1, 3)]);
        let l = compute_relation_lattice(&s);
        assert_eq!(l.basis(), &[vec![2, -1, 0]]);
        // (1/2)^2 (1/4)^-1 = 1
        assert_eq!(s.monomial_value(&[2, -1, 0]), Some(rat(1, 1)));

        let s = exact(&[(1, 2), (1, 3), (1, 5)]);
        assert!(compute_relation_lattice(&s).is_trivial());

        let s = Spectrum::symbolic(vec![7, 7, 7]).unwrap();
        assert_eq!(
            compute_relation_lattice(&s).basis(),
            &[vec![1, 0, -1], vec![0, 1, -1]]
        );
    }

    #[test]
    fn composite_values_use_coprime_base() {
        // 1/210 = (1/6)(1/35), found without splitting 6 or 35 into primes
        let s = exact(&[(1, 6), (1, 35), (1, 210)]);
        let l = compute_relation_lattice(&s);
        assert_eq!(l.basis(), &[vec![1, 1, -1]]);
        let s = exact(&[(2, 3), (4, 9)]);
        assert_eq!(compute_relation_lattice(&s).basis(), &[vec![2, -1]]);
    }

    #[test]
    fn classify_examples() {
        let s = Spectrum::symbolic(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(classify(&s, &compute_relation_lattice(&s)), HopfClass::Classical);
        let s = exact(&[(1, 2), (1, 3), (1, 5)]);
        assert_eq!(classify(&s, &compute_relation_lattice(&s)), HopfClass::NoResonance);
        let s = exact(&[(1, 2), (1, 2), (1, 3), (1, 5)]);
        assert_eq!(
            classify(&s, &compute_relation_lattice(&s)),
            HopfClass::WeakNoResonance { r: 2, perm: vec![0, 1, 2, 3] }
        );
        let s = exact(&[(1, 3), (1, 2), (1, 5), (1, 2)]);
        assert_eq!(
            classify(&s, &compute_relation_lattice(&s)),
            HopfClass::WeakNoResonance { r: 2, perm: vec![1, 3, 0, 2] }
        );
        // two blocks, or a non-difference relation
        let s = exact(&[(1, 2), (1, 2), (1, 3), (1, 3)]);
        assert_eq!(classify(&s, &compute_relation_lattice(&s)), HopfClass::GeneralResonant);
        let s = exact(&[(1, 2), (1, 4), (1, 3)]);
        assert_eq!(classify(&s, &compute_relation_lattice(&s)), HopfClass::GeneralResonant);
        let s = Spectrum::symbolic(vec![1, 1, 2, 2, 3]).unwrap();
        assert_eq!(classify(&s, &compute_relation_lattice(&s)), HopfClass::GeneralResonant);
    }

    #[test]
    fn member_examples() {
        let l = RelationLattice::from_generators(3, &[vec![2, -1, 0]]);
        assert!(lattice_member(&l, &[4, -2, 0]).unwrap());
        assert!(!lattice_member(&l, &[1, 0, 0]).unwrap());
        assert!(lattice_member(&RelationLattice::trivial(3), &[0, 0, 0]).unwrap());
        assert!(lattice_member(&l, &[1, 0]).is_err());
    }

    #[test]
    fn character_examples() {
        let s = exact(&[(1, 2), (1, 3)]);
        let c = character_from_value(&s, &rat(1, 6)).unwrap();
        assert_eq!(c.exponents(), &[1, 1]);
        assert!(matches!(
            character_from_value(&s, &rat(1, 7)),
            Err(Error::NotMonomialCharacter)
        ));
        assert_eq!(character_from_value(&s, &rat(1, 1)).unwrap().exponents(), &[0, 0]);

        // resonant: value 1/16 = (1/4)^2 = (1/2)^4 reduces to one representative
        let s = exact(&[(1, 2), (1, 4), (1, 3)]);
        let a = character_from_value(&s, &rat(1, 16)).unwrap();
        let l = compute_relation_lattice(&s);
        let b = Character::from_exponents(&s, vec![0, 2, 0]).unwrap();
        assert!(a.equivalent(&b, &l).unwrap());
        assert_eq!(s.monomial_value(a.exponents()), Some(rat(1, 16)));

        let sym = Spectrum::symbolic(vec![1, 2]).unwrap();
        assert!(matches!(
            character_from_value(&sym, &rat(1, 2)),
            Err(Error::SymbolicModeUnsupported)
        ));
    }

    #[test]
    fn invalid_spectra() {
        assert!(Spectrum::exact(vec![rat(1, 2)]).is_err());
        assert!(Spectrum::exact(vec![rat(1, 2), rat(3, 2)]).is_err());
        assert!(Spectrum::exact(vec![rat(1, 2), rat(0, 1)]).is_err());
        assert!(Spectrum::exact(vec![rat(1, 2), rat(1, 1)]).is_err());
    }
}
