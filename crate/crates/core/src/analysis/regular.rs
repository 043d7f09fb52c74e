use serde::{Deserialize, Serialize};

use super::{analyze, singular, singular_locus, CompactLeaf, PfaffReport};
use crate::error::{Error, Result};
use crate::par;
use crate::sections::{general_section, solve_sections, SectionProblem};
use crate::spectrum::{classify, compute_relation_lattice, Character, HopfClass, Spectrum};

/// Result of scanning every character `m ∈ {0,1}ⁿ` for regular systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularEnumeration {
    pub n: usize,
    pub k: usize,
    pub characters_examined: usize,
    /// Characters with a nonzero section space.
    pub characters_with_sections: usize,
    /// One entry per character admitting a regular member.
    pub regular: Vec<RegularSystem>,
    /// Regular members that are not a constant `C dz_I` (expected empty).
    pub nonconstant_regular: Vec<String>,
    /// Characters whose general member vanishes on a hypersurface, so it
    /// does not define a Pfaff system (singular set of codimension one).
    pub codim_one: Vec<Vec<i64>>,
    /// Basis elements that, taken alone, vanish on a hypersurface and are
    /// therefore filtered out as candidate systems.
    pub codim_one_basis_elements: usize,
}

/// A regular family: its character, the member with all free
/// coefficients equal to one, and that member's report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularSystem {
    pub character: Vec<i64>,
    pub form: String,
    pub report: PfaffReport,
}

/// Per character: exponents, singular codimension of the general member,
/// number of basis elements vanishing on a hypersurface, and the regular
/// system if any.
type Scanned = (Vec<i64>, Option<usize>, usize, Option<RegularSystem>);

/// Scan `{0,1}ⁿ` characters on a no-resonance spectrum for regular
/// `k`-form sections, `1 ≤ k ≤ n − 2`.
///
/// The member with every free coefficient nonzero has the smallest
/// singular set in its family (monomial coefficients, so dropping terms
/// can only add common zeros); a family has a regular member iff that
/// member is regular.
pub fn enumerate_regular_systems(s: &Spectrum, k: usize) -> Result<RegularEnumeration> {
    let n = s.n();
    let l = compute_relation_lattice(s);
    let class = classify(s, &l);
    if class != HopfClass::NoResonance {
        return Err(Error::WrongClass { found: class.to_string() });
    }
    if n < 3 || k == 0 || k + 2 > n {
        return Err(Error::InvalidProblem(format!(
            "regular systems are enumerated for 1 <= k <= n - 2 (got n = {n}, k = {k}); \
             k = n - 1 is excluded because the constant-form argument needs k + 1 <= n - 1"
        )));
    }
    let masks: Vec<u64> = (0..1u64 << n).collect();
    let results = par::map(masks, |mask| -> Result<Option<Scanned>> {
        let exps: Vec<i64> = (0..n).map(|i| (mask >> i & 1) as i64).collect();
        let b = Character::from_exponents(s, exps)?;
        let p = SectionProblem::new(s.clone(), k, b.clone())?;
        let basis = solve_sections(&p)?;
        if basis.dim() == 0 {
            return Ok(None);
        }
        let mut flagged = 0;
        for sol in &basis.solutions {
            if singular_locus(&sol.to_kform())?.codim() == Some(1) {
                flagged += 1;
            }
        }
        let member = general_section(&p)?.generic_member();
        let codim = singular_locus(&member)?.codim();
        if codim.is_some() {
            return Ok(Some((b.exponents().to_vec(), codim, flagged, None)));
        }
        let mut report = analyze(Some(s), Some(&b), &member)?;
        if report.compact_leaf.is_none() && singular::is_constant_single_term(&member) {
            report.compact_leaf = Some(CompactLeaf::for_tuple(member.terms().next().expect("nonzero").0));
        }
        Ok(Some((
            b.exponents().to_vec(),
            None,
            flagged,
            Some(RegularSystem {
                character: b.exponents().to_vec(),
                form: member.to_string(),
                report,
            }),
        )))
    });

    let mut out = RegularEnumeration {
        n,
        k,
        characters_examined: 1 << n,
        characters_with_sections: 0,
        regular: Vec::new(),
        nonconstant_regular: Vec::new(),
        codim_one: Vec::new(),
        codim_one_basis_elements: 0,
    };
    for r in results {
        let Some((m, codim, flagged, found)) = r? else { continue };
        out.characters_with_sections += 1;
        out.codim_one_basis_elements += flagged;
        if codim == Some(1) {
            out.codim_one.push(m);
        }
        let Some(system) = found else { continue };
        if system.report.compact_leaf.is_none() {
            out.nonconstant_regular.push(system.form.clone());
        }
        out.regular.push(system);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn no_res(n: usize) -> Spectrum {
        let primes = [2, 3, 5, 7, 11, 13, 17, 19];
        Spectrum::exact(primes[..n].iter().map(|&p| rat(1, p)).collect()).unwrap()
    }

    #[test]
    fn n5_k2_has_ten_constant_families() {
        let e = enumerate_regular_systems(&no_res(5), 2).unwrap();
        assert_eq!(e.regular.len(), 10);
        assert!(e.nonconstant_regular.is_empty());
        for sys in &e.regular {
            let r = &sys.report;
            assert!(r.is_integrable.is_integrable());
            let leaf = r.compact_leaf.as_ref().unwrap();
            assert_eq!(leaf.zero_set.len(), 2);
            let ones: Vec<usize> = sys
                .character
                .iter()
                .enumerate()
                .filter(|(_, &m)| m == 1)
                .map(|(i, _)| i + 1)
                .collect();
            assert_eq!(ones, leaf.zero_set);
        }
    }

    #[test]
    fn general_members_never_vanish_on_hypersurfaces() {
        // support of size s: the general member vanishes where s - k + 1 of
        // those coordinates vanish, so codim >= 2 once s > k; single basis
        // elements z^(1 - 1_I) dz_I with s > k vanish on hyperplanes
        let e = enumerate_regular_systems(&no_res(5), 2).unwrap();
        assert!(e.codim_one.is_empty());
        // s = 3: 3 elements, s = 4: 6 each, s = 5: 10
        assert_eq!(e.codim_one_basis_elements, 10 * 3 + 5 * 6 + 10);
    }

    #[test]
    fn n4_k1_has_four() {
        let e = enumerate_regular_systems(&no_res(4), 1).unwrap();
        assert_eq!(e.regular.len(), 4);
    }

    #[test]
    fn rejects_wrong_class_and_top_degree() {
        let classical = Spectrum::exact(vec![rat(1, 2); 4]).unwrap();
        assert!(matches!(
            enumerate_regular_systems(&classical, 1),
            Err(Error::WrongClass { .. })
        ));
        assert!(matches!(
            enumerate_regular_systems(&no_res(4), 3),
            Err(Error::InvalidProblem(_))
        ));
    }
}
