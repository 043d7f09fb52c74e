//! Independent check of the section basis: build every monomial k-form up
//! to a degree bound, apply `p₀` to it, and take the kernel of the resulting
//! linear map by exact sparse elimination.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{p0_apply, MonomialSolution, SectionBasis, SectionNote, SectionProblem};
use crate::error::{Error, Result};
use crate::exterior::{index_tuples, monomials_up_to, IndexTuple, KForm, Monomial, Poly};
use crate::par;
use crate::rational::GaussRat;

pub type SparseVec<K> = BTreeMap<K, GaussRat>;

/// Kernel of the linear map whose `j`-th column is `columns[j]`, returned as
/// sparse combinations of column indices.
pub fn sparse_kernel<K: Ord + Clone + Hash>(columns: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    // pivot rows keyed by leading entry
    let mut pivots: HashMap<K, (SparseVec<K>, SparseVec<usize>)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut comb: SparseVec<usize> = BTreeMap::from([(j, GaussRat::one())]);
        loop {
            let Some((lead, lead_val)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
                kernel.push(comb);
                break;
            };
            let Some((pv, pc)) = pivots.get(&lead) else {
                pivots.insert(lead, (v, comb));
                break;
            };
            let q = &lead_val * &pv[&lead].inv().expect("pivot is nonzero");
            axpy(&mut v, &q, pv);
            axpy(&mut comb, &q, pc);
        }
    }
    kernel
}

/// `v -= q·w`
fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, q: &GaussRat, w: &SparseVec<K>) {
    for (k, c) in w {
        let delta = q * c;
        let slot = v.entry(k.clone()).or_default();
        *slot = &*slot - &delta;
        if slot.is_zero() {
            v.remove(k);
        }
    }
}

/// Smallest `D` such that every solution has `|α| ≤ D`.
///
/// On a solution `μ^α = b/μ_I`; since every `μᵢ ≤ μ_max < 1`,
/// `μ_max^{|α|} ≥ μ^α`, so `|α|` is at most the largest `a` with
/// `μ_max^a ≥ b/μ_I`. Computed with exact rational comparisons.
pub fn sufficient_degree(p: &SectionProblem) -> Result<u32> {
    let mu = p.spectrum().exact_values().ok_or(Error::SymbolicModeUnsupported)?;
    let b = p.character().value().ok_or(Error::SymbolicModeUnsupported)?;
    let mu_max = mu.iter().max().expect("n >= 3").clone();
    let mut best = 0;
    for idx in index_tuples(p.n(), p.k()) {
        let target = idx.iter().fold(b.clone(), |acc, &i| acc / &mu[i]);
        if target > BigRational::one() {
            continue;
        }
        let mut a = 0;
        let mut pw = mu_max.clone();
        while pw >= target {
            a += 1;
            pw *= &mu_max;
        }
        best = best.max(a);
    }
    Ok(best)
}

/// Kernel of `p₀` on monomial k-forms of total coefficient degree `≤ max_degree`.
pub fn brute_force_kernel(p: &SectionProblem, max_degree: u32) -> Result<SectionBasis> {
    let s = p.spectrum();
    let b = p.character();
    if b.value().is_none() {
        return Err(Error::SymbolicModeUnsupported);
    }
    let n = p.n();
    let monos = monomials_up_to(n, max_degree);
    let domain: Vec<(IndexTuple, Monomial)> = index_tuples(n, p.k())
        .into_iter()
        .flat_map(|idx| monos.iter().map(move |m| (idx.clone(), m.clone())))
        .collect();

    let columns: Vec<Result<SparseVec<(IndexTuple, Monomial)>>> = par::map(domain.clone(), |(idx, alpha)| {
        let w = KForm::term(n, &idx, Poly::monomial(alpha))?;
        let image = p0_apply(s, b, &w)?;
        Ok(image
            .monomial_terms()
            .map(|(i, m, c)| ((i.clone(), m.clone()), c.clone()))
            .collect())
    });
    let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;

    let mut solutions = Vec::new();
    for v in sparse_kernel(&columns) {
        if v.len() != 1 {
            return Err(Error::NonMonomialKernel);
        }
        let (&j, _) = v.iter().next().expect("one entry");
        let (idx, alpha) = domain[j].clone();
        solutions.push(MonomialSolution { idx, alpha });
    }
    solutions.sort();
    let mut notes = Vec::new();
    if p.k() + 1 == n {
        notes.push(SectionNote::TopDegree);
    }
    Ok(SectionBasis { solutions, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::sections::solve_sections;
    use crate::spectrum::Spectrum;

    #[test]
    fn kernel_of_small_dense_map() {
        // columns (1,1), (2,2), (0,1): kernel spanned by 2*c0 - c1
        let cols: Vec<SparseVec<u8>> = vec![
            BTreeMap::from([(0, GaussRat::from_int(1)), (1, GaussRat::from_int(1))]),
            BTreeMap::from([(0, GaussRat::from_int(2)), (1, GaussRat::from_int(2))]),
            BTreeMap::from([(1, GaussRat::from_int(1))]),
        ];
        let k = sparse_kernel(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][&0], GaussRat::from_int(-2));
        assert_eq!(k[0][&1], GaussRat::from_int(1));
    }

    #[test]
    fn oracle_examples() {
        let classical = Spectrum::exact(vec![rat(1, 2); 3]).unwrap();
        let p = SectionProblem::with_exponents(classical, 1, vec![2, 0, 0]).unwrap();
        let brute = brute_force_kernel(&p, 3).unwrap();
        assert_eq!(brute.dim(), 9);
        assert_eq!(brute.solutions, solve_sections(&p).unwrap().solutions);

        let s = Spectrum::exact(vec![rat(1, 2), rat(1, 3), rat(1, 5)]).unwrap();
        let p = SectionProblem::with_exponents(s.clone(), 1, vec![2, 1, 0]).unwrap();
        let brute = brute_force_kernel(&p, 4).unwrap();
        assert_eq!(
            brute.solutions,
            vec![
                MonomialSolution { idx: vec![0], alpha: Monomial(vec![1, 1, 0]) },
                MonomialSolution { idx: vec![1], alpha: Monomial(vec![2, 0, 0]) },
            ]
        );

        let p = SectionProblem::with_exponents(s, 2, vec![0, 0, 0]).unwrap();
        assert_eq!(brute_force_kernel(&p, 3).unwrap().dim(), 0);
    }

    #[test]
    fn degree_bound_covers_solutions() {
        let s = Spectrum::exact(vec![rat(1, 2), rat(1, 4), rat(1, 3)]).unwrap();
        let p = SectionProblem::with_exponents(s, 1, vec![1, 1, 1]).unwrap();
        let d = sufficient_degree(&p).unwrap();
        let sols = solve_sections(&p).unwrap();
        assert!(sols.solutions.iter().all(|s| s.alpha.degree() <= d));
        assert_eq!(brute_force_kernel(&p, d).unwrap().solutions, sols.solutions);
    }
}
