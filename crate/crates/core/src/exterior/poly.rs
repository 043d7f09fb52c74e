use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use crate::rational::GaussRat;

/// Sparse polynomial over ℚ(i) in `n` variables.
///
/// Zero coefficients are never stored and keys are kept in grlex order, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussRat) -> Self {
        Self::term(c, Monomial::one(n))
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussRat::one())
    }

    pub fn term(c: GaussRat, m: Monomial) -> Self {
        let n = m.n();
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(GaussRat::one(), m)
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(n, i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term, if the polynomial is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-GaussRat::one())
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.deriv(i) {
                out.add_term(dm, &c.scale(&BigRational::from_integer(e.into())));
            }
        }
        out
    }

    /// Substitute `zᵢ ↦ scales[i]·zᵢ`.
    pub fn rescale(&self, scales: &[BigRational]) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let mut f = BigRational::one();
            for (s, &e) in scales.iter().zip(&m.0) {
                if e > 0 {
                    f *= num_traits::pow(s.clone(), e as usize);
                }
            }
            out.add_term(m.clone(), &c.scale(&f));
        }
        out
    }

    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Restriction to the coordinate subspace `{zᵢ = 0 : bit i of mask}`.
    pub fn restrict_zero(&self, mask: u64) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.support_mask() & mask == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest monomial dividing every term (the monomial content).
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    /// Divide every exponent by `m` (which must divide every term).
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest grlex term first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
