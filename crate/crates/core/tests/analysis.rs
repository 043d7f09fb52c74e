mod common;

use hopf_pfaff::analysis::{
    analyze, distribution_involutive, is_decomposable, is_integrable, monomial_strata_brute_force, singular_locus,
    Integrability, PfaffReport, SingularLocus,
};
use hopf_pfaff::exterior::{index_tuples, KForm, Monomial, Poly, PolyVectorField};
use hopf_pfaff::rational::GaussRat;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn monomial_form(seed: u64) -> KForm {
    let mut r = common::rng(seed);
    let n = r.gen_range(2..=6);
    let k = r.gen_range(1..n);
    let mut tuples = index_tuples(n, k);
    tuples.shuffle(&mut r);
    let count = r.gen_range(1..=tuples.len().min(4));
    let mut w = KForm::zero(n, k);
    for idx in &tuples[..count] {
        let g = Poly::term(common::coeff(&mut r), common::monomial(&mut r, n, 3));
        w = w.add(&KForm::term(n, idx, g).unwrap()).unwrap();
    }
    w
}

fn one_form(r: &mut rand::rngs::StdRng, n: usize) -> KForm {
    common::form(r, n, 1, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn monomial_locus_matches_stratum_scan(seed in any::<u64>()) {
        let w = monomial_form(seed);
        match singular_locus(&w).unwrap() {
            SingularLocus::Exact(strata) => prop_assert_eq!(strata, monomial_strata_brute_force(&w)),
            other => prop_assert!(false, "monomial form gave {:?}", other),
        }
    }

    #[test]
    fn wedges_of_one_forms_are_decomposable(seed in any::<u64>(), n in 3usize..=5, k in 2usize..=3) {
        let mut r = common::rng(seed);
        let k = k.min(n - 1);
        let mut w = one_form(&mut r, n);
        for _ in 1..k {
            w = w.wedge(&one_form(&mut r, n)).unwrap();
        }
        prop_assert!(is_decomposable(&w));
    }

    #[test]
    fn wedges_of_exact_forms_are_integrable(seed in any::<u64>(), n in 3usize..=5, k in 1usize..=3) {
        let mut r = common::rng(seed);
        let k = k.min(n - 1);
        let mut w = common::poly(&mut r, n, 3, 3);
        let mut form = KForm::zero(n, 0);
        for i in 0..k {
            let df = KForm::term(n, &[], common::poly(&mut r, n, 3, 3)).unwrap().ext_d();
            form = if i == 0 { df } else { form.wedge(&df).unwrap() };
        }
        // a function multiple keeps integrability
        if w.is_zero() { w = Poly::one(n); }
        let form = form.mul_poly(&w);
        prop_assume!(!form.is_zero());
        prop_assert_eq!(is_integrable(&form), Integrability::Integrable);
    }

    #[test]
    fn reports_round_trip_and_respect_ordering(seed in any::<u64>()) {
        let w = monomial_form(seed);
        let report = analyze(None, None, &w).unwrap();
        prop_assert!(!report.is_integrable.is_integrable() || report.is_decomposable);
        let text = serde_json::to_string(&report).unwrap();
        let back: PfaffReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn diagonal_monomial_fields_are_involutive(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = common::rng(seed);
        let mut coords: Vec<usize> = (0..n).collect();
        coords.shuffle(&mut r);
        let q = r.gen_range(1..=n);
        let chosen = &coords[..q];
        let commuting = seed % 2 == 0;
        let gens: Vec<PolyVectorField> = chosen
            .iter()
            .map(|&i| {
                let mut a = common::monomial(&mut r, n, 3);
                if commuting {
                    for &j in chosen {
                        a.0[j] = 0;
                    }
                }
                PolyVectorField::single(n, i, Poly::monomial(a))
            })
            .collect();
        if commuting {
            for x in &gens {
                for y in &gens {
                    prop_assert!(x.lie_bracket(y).unwrap().is_zero());
                }
            }
        }
        prop_assert!(distribution_involutive(&gens).unwrap());
    }
}

#[test]
fn symplectic_form_is_not_decomposable() {
    let w = KForm::basis(4, &[0, 1]).unwrap().add(&KForm::basis(4, &[2, 3]).unwrap()).unwrap();
    assert!(!is_decomposable(&w));
    assert_eq!(is_integrable(&w), Integrability::NotApplicable);
    assert_eq!(serde_json::to_string(&Integrability::NotApplicable).unwrap(), "\"not applicable (non-decomposable)\"");
}

#[test]
fn contact_form_is_not_integrable() {
    // dz1 + z2 dz3: w ∧ dw = dz1 ∧ dz2 ∧ dz3
    let n = 3;
    let w = KForm::dz(n, 0).add(&KForm::dz(n, 2).mul_poly(&Poly::var(n, 1))).unwrap();
    assert!(is_decomposable(&w));
    assert_eq!(is_integrable(&w), Integrability::NotIntegrable);
    // and as a distribution: ker w = span{∂2, ∂3 − z2 ∂1}
    let x = PolyVectorField::coordinate(n, 1);
    let y = PolyVectorField::coordinate(n, 2)
        .add(&PolyVectorField::single(n, 0, Poly::var(n, 1).neg()))
        .unwrap();
    assert!(!distribution_involutive(&[x, y]).unwrap());
}

#[test]
fn non_monomial_locus_is_labelled_probabilistic() {
    // (z1 + z2) dz1 + (z1 - z2) dz2 + z3 dz3 on C^3: only the origin is common
    let n = 3;
    let one = GaussRat::from_int(1);
    let mut g = Poly::var(n, 0);
    g.add_term(Monomial::var(n, 1), &one);
    let mut h = Poly::var(n, 0);
    h.add_term(Monomial::var(n, 1), &GaussRat::from_int(-1));
    let w = KForm::dz(n, 0)
        .mul_poly(&g)
        .add(&KForm::dz(n, 1).mul_poly(&h))
        .unwrap()
        .add(&KForm::dz(n, 2).mul_poly(&Poly::var(n, 2)))
        .unwrap();
    let locus = singular_locus(&w).unwrap();
    assert!(!locus.is_exact());
    assert!(locus.is_empty(), "{locus:?}");
    // z1 + z2 alone vanishes on a hypersurface
    let w = KForm::dz(n, 0).mul_poly(&g);
    assert_eq!(singular_locus(&w).unwrap().codim(), Some(1));
}
