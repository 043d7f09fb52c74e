//! Decomposability, integrability, invariance and involutivity checks, all
//! as exact polynomial identities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{index_tuples, KForm, PolyVectorField};
use crate::par;
use crate::sections::p0_apply;
use crate::spectrum::{Character, RelationLattice, Spectrum};

/// Outcome of the Frobenius test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrability {
    Integrable,
    NotIntegrable,
    /// The form is not decomposable, so it defines no distribution.
    NotApplicable,
}

impl Integrability {
    pub fn is_integrable(self) -> bool {
        self == Integrability::Integrable
    }
}

impl Serialize for Integrability {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Integrability::Integrable => s.serialize_bool(true),
            Integrability::NotIntegrable => s.serialize_bool(false),
            Integrability::NotApplicable => s.serialize_str("not applicable (non-decomposable)"),
        }
    }
}

impl<'de> Deserialize<'de> for Integrability {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bool(bool),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Bool(true) => Ok(Integrability::Integrable),
            Raw::Bool(false) => Ok(Integrability::NotIntegrable),
            Raw::Text(t) if t.starts_with("not applicable") => Ok(Integrability::NotApplicable),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("unknown integrability `{t}`"))),
        }
    }
}

/// Plücker test: `(ι_{∂_J} ω) ∧ ω = 0` for every `(k−1)`-tuple `J`.
pub fn is_decomposable(w: &KForm) -> bool {
    let n = w.n();
    let k = w.degree();
    if w.is_zero() || k <= 1 || k + 1 >= n {
        return true;
    }
    par::all(index_tuples(n, k - 1), |j| {
        w.contract_coords(&j)
            .wedge(w)
            .expect("same dimension")
            .is_zero()
    })
}

/// Frobenius test for decomposable forms: `(ι_{∂_J} ω) ∧ dω = 0` for every
/// `(k−1)`-tuple `J`; for `k = 1` this is `ω ∧ dω = 0`.
pub fn is_integrable(w: &KForm) -> Integrability {
    if !is_decomposable(w) {
        return Integrability::NotApplicable;
    }
    let n = w.n();
    let k = w.degree();
    if w.is_zero() || k == 0 {
        return Integrability::Integrable;
    }
    let dw = w.ext_d();
    if dw.is_zero() {
        return Integrability::Integrable;
    }
    let ok = par::all(index_tuples(n, k - 1), |j| {
        w.contract_coords(&j)
            .wedge(&dw)
            .expect("same dimension")
            .is_zero()
    });
    if ok {
        Integrability::Integrable
    } else {
        Integrability::NotIntegrable
    }
}

/// `f*w = b·w`. In symbolic mode each term `z^α dz_I` must satisfy
/// `α + 1_I − m ∈ L`.
pub fn check_equivariance(s: &Spectrum, l: &RelationLattice, b: &Character, w: &KForm) -> Result<bool> {
    if w.n() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: w.n() });
    }
    if w.is_zero() {
        return Ok(true);
    }
    if s.is_exact() && b.value().is_some() {
        return Ok(p0_apply(s, b, w)?.is_zero());
    }
    for (idx, alpha, _) in w.monomial_terms() {
        let mut v: Vec<i64> = alpha
            .0
            .iter()
            .zip(b.exponents())
            .map(|(&a, &m)| a as i64 - m)
            .collect();
        for &i in idx {
            v[i] += 1;
        }
        if !l.contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `α(I) + 1_I` of every monomial term.
pub fn term_weights(w: &KForm) -> Vec<Vec<i64>> {
    w.monomial_terms()
        .map(|(idx, alpha, _)| {
            let mut v: Vec<i64> = alpha.0.iter().map(|&a| a as i64).collect();
            for &i in idx {
                v[i] += 1;
            }
            v
        })
        .collect()
}

/// Diagonal-torus weight vector: every coefficient is a single monomial and
/// all terms share `α(I) + 1_I`.
pub fn torus_invariant(w: &KForm) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::ZeroForm);
    }
    if w.terms().any(|(_, g)| g.as_monomial().is_none()) {
        return Ok(false);
    }
    let weights = term_weights(w);
    Ok(weights.windows(2).all(|p| p[0] == p[1]))
}

/// Character recovered by weight bookkeeping: all term weights must agree
/// modulo the relation lattice; returns the canonical representative.
pub fn recover_character(l: &RelationLattice, w: &KForm) -> Result<Option<Vec<i64>>> {
    let weights = term_weights(w);
    let Some(first) = weights.first() else {
        return Err(Error::ZeroForm);
    };
    for v in &weights[1..] {
        let diff: Vec<i64> = v.iter().zip(first).map(|(a, b)| a - b).collect();
        if !l.contains(&diff)? {
            return Ok(None);
        }
    }
    Ok(Some(l.reduce(first)))
}

/// `[vᵢ, vⱼ] ∧ v₁ ∧ ⋯ ∧ v_q = 0` for all pairs, as polynomial multivectors.
pub fn distribution_involutive(gens: &[PolyVectorField]) -> Result<bool> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidProblem("no generators".to_string()))?;
    let n = first.n();
    if let Some(bad) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
    }
    let mut top = first.as_one_form();
    for g in &gens[1..] {
        top = top.wedge(&g.as_one_form())?;
    }
    if top.is_zero() {
        return Err(Error::DegenerateGenerators);
    }
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
        .collect();
    let results = par::map(pairs, |(i, j)| -> Result<bool> {
        let br = gens[i].lie_bracket(&gens[j])?;
        Ok(br.as_one_form().wedge(&top)?.is_zero())
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Monomial, Poly};
    use crate::rational::rat;
    use crate::spectrum::compute_relation_lattice;

    fn mono(e: &[u32]) -> Poly {
        Poly::monomial(Monomial(e.to_vec()))
    }

    #[test]
    fn decomposable_examples() {
        assert!(is_decomposable(&KForm::basis(4, &[0, 1]).unwrap()));
        let w = KForm::basis(4, &[0, 1]).unwrap().add(&KForm::basis(4, &[2, 3]).unwrap()).unwrap();
        assert!(!is_decomposable(&w));
        // ι_{∂1} ω ∧ ω = dz2 ∧ dz3 ∧ dz4
        assert_eq!(w.interior_coord(0).wedge(&w).unwrap(), KForm::basis(4, &[1, 2, 3]).unwrap());
        let one = KForm::term(4, &[0], Poly::var(4, 2)).unwrap().add(&KForm::dz(4, 3)).unwrap();
        assert!(is_decomposable(&one));
    }

    #[test]
    fn integrable_examples() {
        let c = KForm::basis(4, &[0, 1, 2]).unwrap();
        assert_eq!(is_integrable(&c), Integrability::Integrable);
        // dz3 + z1 dz2
        let w = KForm::dz(3, 2).add(&KForm::term(3, &[1], Poly::var(3, 0)).unwrap()).unwrap();
        assert_eq!(w.wedge(&w.ext_d()).unwrap(), KForm::basis(3, &[0, 1, 2]).unwrap());
        assert_eq!(is_integrable(&w), Integrability::NotIntegrable);
        let w = KForm::term(5, &[0, 1, 2], mono(&[0, 0, 0, 1, 1])).unwrap();
        assert_eq!(is_integrable(&w), Integrability::Integrable);
        let nd = KForm::basis(4, &[0, 1]).unwrap().add(&KForm::basis(4, &[2, 3]).unwrap()).unwrap();
        assert_eq!(is_integrable(&nd), Integrability::NotApplicable);
    }

    #[test]
    fn integrability_serializes_like_the_report() {
        let t = serde_json::to_string(&Integrability::NotApplicable).unwrap();
        assert_eq!(t, "\"not applicable (non-decomposable)\"");
        let back: Integrability = serde_json::from_str(&t).unwrap();
        assert_eq!(back, Integrability::NotApplicable);
        assert_eq!(serde_json::to_string(&Integrability::Integrable).unwrap(), "true");
    }

    #[test]
    fn equivariance_examples() {
        let s = Spectrum::exact(vec![rat(1, 2); 3]).unwrap();
        let l = compute_relation_lattice(&s);
        let b = Character::from_exponents(&s, vec![3, 0, 0]).unwrap();
        let w = KForm::basis(3, &[0, 1]).unwrap();
        assert!(!check_equivariance(&s, &l, &b, &w).unwrap());
        let w = KForm::term(3, &[0, 1], Poly::var(3, 2)).unwrap();
        assert!(check_equivariance(&s, &l, &b, &w).unwrap());
        assert!(check_equivariance(&s, &l, &b, &KForm::zero(3, 2)).unwrap());

        let sym = Spectrum::symbolic(vec![1, 1, 1]).unwrap();
        let l = compute_relation_lattice(&sym);
        let b = Character::from_exponents(&sym, vec![1, 1, 1]).unwrap();
        assert!(check_equivariance(&sym, &l, &b, &w).unwrap());
        assert!(!check_equivariance(&sym, &l, &b, &KForm::basis(3, &[0, 1]).unwrap()).unwrap());
    }

    #[test]
    fn torus_examples() {
        let n = 5;
        let w = KForm::term(n, &[0, 1, 2], mono(&[0, 0, 0, 1, 1]))
            .unwrap()
            .add(&KForm::term(n, &[1, 3, 4], mono(&[1, 0, 1, 0, 0])).unwrap())
            .unwrap();
        assert!(torus_invariant(&w).unwrap());
        let w = KForm::term(3, &[2], Poly::var(3, 0).add(&Poly::var(3, 1))).unwrap();
        assert!(!torus_invariant(&w).unwrap());
        assert!(torus_invariant(&KForm::zero(3, 1)).is_err());
    }

    #[test]
    fn involutive_examples() {
        let n = 3;
        let d = |i| PolyVectorField::coordinate(n, i);
        assert!(distribution_involutive(&[d(0), d(1)]).unwrap());
        let diag: Vec<_> = (0..n).map(|i| PolyVectorField::single(n, i, Poly::var(n, i))).collect();
        assert!(distribution_involutive(&diag).unwrap());
        let v = PolyVectorField::single(n, 1, Poly::var(n, 0)).add(&d(2)).unwrap();
        assert!(!distribution_involutive(&[d(0), v]).unwrap());
        assert!(matches!(
            distribution_involutive(&[d(0), d(0)]),
            Err(Error::DegenerateGenerators)
        ));
    }
}
