//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use hopf_pfaff::exterior::{index_tuples, KForm, Monomial, Poly, PolyVectorField};
use hopf_pfaff::rational::{rat, GaussRat};
use hopf_pfaff::spectrum::Spectrum;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const PRIMES: [i64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small nonzero Gaussian rational.
pub fn coeff(rng: &mut StdRng) -> GaussRat {
    loop {
        let re = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let im = if rng.gen_bool(0.3) {
            rat(rng.gen_range(-2..=2), rng.gen_range(1..=2))
        } else {
            rat(0, 1)
        };
        let c = GaussRat::new(re, im);
        if c != GaussRat::from_int(0) {
            return c;
        }
    }
}

pub fn monomial(rng: &mut StdRng, n: usize, max_deg: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..rng.gen_range(0..=max_deg) {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial(e)
}

/// Sparse polynomial with up to `terms` terms of degree `<= max_deg`.
pub fn poly(rng: &mut StdRng, n: usize, terms: usize, max_deg: u32) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        p.add_term(monomial(rng, n, max_deg), &coeff(rng));
    }
    p
}

/// Sparse k-form with up to `terms` index tuples.
pub fn form(rng: &mut StdRng, n: usize, k: usize, terms: usize) -> KForm {
    let tuples = index_tuples(n, k);
    let mut w = KForm::zero(n, k);
    for _ in 0..rng.gen_range(1..=terms) {
        let idx = tuples.choose(rng).expect("k <= n");
        let piece = KForm::term(n, idx, poly(rng, n, 2, 2)).expect("valid tuple");
        w = w.add(&piece).expect("same degree");
    }
    w
}

pub fn vector_field(rng: &mut StdRng, n: usize) -> PolyVectorField {
    let comps = (0..n)
        .map(|_| if rng.gen_bool(0.6) { poly(rng, n, 2, 2) } else { Poly::zero(n) })
        .collect();
    PolyVectorField::from_components(comps).expect("same n")
}

/// `1/p` for `n` distinct primes `<= 23`.
pub fn prime_spectrum(rng: &mut StdRng, n: usize) -> Spectrum {
    let mut ps = PRIMES.to_vec();
    ps.shuffle(rng);
    Spectrum::exact(ps[..n].iter().map(|&p| rat(1, p)).collect()).expect("valid")
}

/// A resonant spectrum: random powers of a few prime reciprocals, e.g.
/// `(1/2, 1/4, 1/3, …)`.
pub fn resonant_spectrum(rng: &mut StdRng, n: usize) -> Spectrum {
    let bases = [2i64, 3, 5];
    let mu = (0..n)
        .map(|_| {
            let p = bases[rng.gen_range(0..bases.len())];
            rat(1, p.pow(rng.gen_range(1..=2)))
        })
        .collect();
    Spectrum::exact(mu).expect("valid")
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
