use std::fmt;

use super::form::KForm;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `Σ vᵢ ∂/∂zᵢ` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn from_components(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            components: (0..n).map(|_| Poly::zero(n)).collect(),
        }
    }

    /// `∂/∂zᵢ`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.components[i] = Poly::one(n);
        v
    }

    /// `g ∂/∂zᵢ`.
    pub fn single(n: usize, i: usize, g: Poly) -> Self {
        let mut v = Self::zero(n);
        v.components[i] = g;
        v
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(PolyVectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn scale_poly(&self, g: &Poly) -> Self {
        PolyVectorField {
            components: self.components.iter().map(|c| c.mul(g)).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    /// Derivation `v(g) = Σ vᵢ ∂g/∂zᵢ`.
    pub fn apply(&self, g: &Poly) -> Poly {
        let mut out = Poly::zero(self.n());
        for (i, vi) in self.components.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            out.add_assign(&vi.mul(&g.deriv(i)));
        }
        out
    }

    /// `[v, w]ⱼ = Σᵢ (vᵢ ∂wⱼ/∂zᵢ − wᵢ ∂vⱼ/∂zᵢ)`.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(PolyVectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(vj, wj)| self.apply(wj).sub(&other.apply(vj)))
                .collect(),
        })
    }

    /// The same coefficients read in the `dzᵢ` basis, so that multivector
    /// wedges can reuse the k-form algebra.
    pub fn as_one_form(&self) -> KForm {
        let n = self.n();
        KForm::from_terms(
            n,
            1,
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i], c.clone())),
        )
        .expect("well-formed components")
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.len() > 1 {
                    format!("({c}) d/dz{}", i + 1)
                } else {
                    format!("{c} d/dz{}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::monomial::Monomial;

    #[test]
    fn bracket_examples() {
        let n = 3;
        let d1 = PolyVectorField::coordinate(n, 0);
        let d2 = PolyVectorField::coordinate(n, 1);
        let z1d2 = PolyVectorField::single(n, 1, Poly::var(n, 0));
        assert_eq!(d1.lie_bracket(&z1d2).unwrap(), d2);
        assert!(d1.lie_bracket(&d2).unwrap().is_zero());
        let e1 = PolyVectorField::single(n, 0, Poly::var(n, 0));
        let e2 = PolyVectorField::single(n, 1, Poly::var(n, 1));
        assert!(e1.lie_bracket(&e2).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let n = 2;
        let v = PolyVectorField::from_components(vec![
            Poly::monomial(Monomial(vec![1, 1])),
            Poly::var(n, 0),
        ])
        .unwrap();
        let w = PolyVectorField::from_components(vec![Poly::var(n, 1), Poly::one(n)]).unwrap();
        let a = v.lie_bracket(&w).unwrap();
        let b = w.lie_bracket(&v).unwrap();
        assert!(a.add(&b).unwrap().is_zero());
        assert!(!a.is_zero());
    }

    #[test]
    fn mismatched_dimensions() {
        assert!(PolyVectorField::coordinate(2, 0)
            .lie_bracket(&PolyVectorField::coordinate(3, 0))
            .is_err());
    }
}
