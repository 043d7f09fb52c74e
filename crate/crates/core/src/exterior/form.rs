use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::vector_field::PolyVectorField;
use crate::error::{Error, Result};
use crate::rational::GaussRat;

/// Strictly increasing index tuple, 0-based internally.
pub type IndexTuple = Vec<usize>;

/// Polynomial k-form `Σ g_I dz_I` on ℂⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KForm {
    n: usize,
    k: usize,
    terms: BTreeMap<IndexTuple, Poly>,
}

/// Sign of the shuffle merging two disjoint increasing tuples, plus the
/// merged tuple; `None` if they share an index.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(bool, IndexTuple)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining a's
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((inversions % 2 == 1, out))
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Self {
        KForm {
            n,
            k,
            terms: BTreeMap::new(),
        }
    }

    /// `g dz_I`. The tuple need not be sorted; it is normalized with the
    /// permutation sign, and a repeated index gives the zero form.
    pub fn term(n: usize, idx: &[usize], g: Poly) -> Result<Self> {
        let k = idx.len();
        if k > n {
            return Err(Error::InvalidForm(format!("degree {k} exceeds dimension {n}")));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidForm(format!("index {} out of range 1..={n}", bad + 1)));
        }
        if g.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.n() });
        }
        let mut out = KForm::zero(n, k);
        let mut sorted = idx.to_vec();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(out);
        }
        let g = if odd { g.neg() } else { g };
        out.add_poly(sorted, &g);
        Ok(out)
    }

    /// Constant `dz_I` (unsorted tuples allowed).
    pub fn basis(n: usize, idx: &[usize]) -> Result<Self> {
        Self::term(n, idx, Poly::one(n))
    }

    /// `dzᵢ`.
    pub fn dz(n: usize, i: usize) -> Self {
        Self::basis(n, &[i]).expect("index in range")
    }

    /// Build from already-normalized terms.
    pub fn from_terms(n: usize, k: usize, terms: impl IntoIterator<Item = (IndexTuple, Poly)>) -> Result<Self> {
        let mut out = KForm::zero(n, k);
        for (idx, g) in terms {
            if idx.len() != k || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= n) {
                return Err(Error::InvalidForm(format!(
                    "index tuple {:?} is not a strictly increasing {k}-tuple in 1..={n}",
                    idx.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.n() });
            }
            out.add_poly(idx, &g);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: &[usize]) -> Option<&Poly> {
        self.terms.get(idx)
    }

    fn add_poly(&mut self, idx: IndexTuple, g: &Poly) {
        use std::collections::btree_map::Entry;
        if g.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(g.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(g);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &KForm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        self.check_same(other)?;
        if self.k != other.k && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidForm(format!(
                "cannot add forms of degree {} and {}",
                self.k, other.k
            )));
        }
        let mut out = if self.is_zero() { KForm::zero(self.n, other.k) } else { self.clone() };
        for (idx, g) in &other.terms {
            out.add_poly(idx.clone(), g);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KForm {
        self.scale(&-GaussRat::one())
    }

    pub fn scale(&self, c: &GaussRat) -> KForm {
        self.mul_poly(&Poly::constant(self.n, c.clone()))
    }

    pub fn mul_poly(&self, p: &Poly) -> KForm {
        let mut out = KForm::zero(self.n, self.k);
        for (idx, g) in &self.terms {
            out.add_poly(idx.clone(), &g.mul(p));
        }
        out
    }

    /// Exterior product. Degrees summing past `n` give the zero form.
    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        self.check_same(other)?;
        let k = self.k + other.k;
        let mut out = KForm::zero(self.n, k.min(self.n));
        if k > self.n {
            return Ok(out);
        }
        for (ia, ga) in &self.terms {
            for (ib, gb) in &other.terms {
                if let Some((odd, merged)) = merge_sign(ia, ib) {
                    let g = ga.mul(gb);
                    out.add_poly(merged, &if odd { g.neg() } else { g });
                }
            }
        }
        out.k = k;
        Ok(out)
    }

    /// Exterior derivative `d(g dz_I) = Σⱼ ∂g/∂zⱼ dzⱼ ∧ dz_I`.
    pub fn ext_d(&self) -> KForm {
        let mut out = KForm::zero(self.n, (self.k + 1).min(self.n));
        if self.k >= self.n {
            return out;
        }
        for (idx, g) in &self.terms {
            for j in 0..self.n {
                if idx.binary_search(&j).is_ok() {
                    continue;
                }
                let dg = g.deriv(j);
                if dg.is_zero() {
                    continue;
                }
                let (odd, merged) = merge_sign(&[j], idx).expect("j not in idx");
                out.add_poly(merged, &if odd { dg.neg() } else { dg });
            }
        }
        out
    }

    /// Interior product `ι_v`.
    pub fn interior(&self, v: &PolyVectorField) -> Result<KForm> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.n() });
        }
        if self.k == 0 {
            return Ok(KForm::zero(self.n, 0));
        }
        let mut out = KForm::zero(self.n, self.k - 1);
        for (idx, g) in &self.terms {
            for (t, &i) in idx.iter().enumerate() {
                let vi = v.component(i);
                if vi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(t);
                let c = g.mul(vi);
                out.add_poly(rest, &if t % 2 == 1 { c.neg() } else { c });
            }
        }
        Ok(out)
    }

    /// `ι_{∂ⱼ}` without building a vector field.
    pub fn interior_coord(&self, j: usize) -> KForm {
        let mut out = KForm::zero(self.n, self.k.saturating_sub(1));
        for (idx, g) in &self.terms {
            if let Ok(t) = idx.binary_search(&j) {
                let mut rest = idx.clone();
                rest.remove(t);
                out.add_poly(rest, &if t % 2 == 1 { g.neg() } else { g.clone() });
            }
        }
        out
    }

    /// `ι_{∂_{j_m}} ∘ ⋯ ∘ ι_{∂_{j_1}}` for a coordinate multivector.
    pub fn contract_coords(&self, js: &[usize]) -> KForm {
        js.iter()
            .fold(self.clone(), |acc, &j| acc.interior_coord(j))
    }

    /// Substitute `zᵢ ↦ sᵢ zᵢ` in coefficients and multiply each `dz_I` term
    /// by `∏_{i∈I} sᵢ`.
    pub fn rescale(&self, scales: &[num_rational::BigRational]) -> KForm {
        let mut out = KForm::zero(self.n, self.k);
        for (idx, g) in &self.terms {
            let mut f = num_rational::BigRational::one();
            for &i in idx {
                f *= &scales[i];
            }
            out.add_poly(idx.clone(), &g.rescale(scales).scale(&GaussRat::real(f)));
        }
        out
    }

    /// Every coefficient, including the common weight bookkeeping view
    /// `(I, α, c)` for monomial terms.
    pub fn monomial_terms(&self) -> impl Iterator<Item = (&IndexTuple, &Monomial, &GaussRat)> {
        self.terms
            .iter()
            .flat_map(|(idx, g)| g.terms().map(move |(m, c)| (idx, m, c)))
    }

    pub fn eval(&self, point: &[GaussRat]) -> BTreeMap<IndexTuple, GaussRat> {
        self.terms
            .iter()
            .map(|(idx, g)| (idx.clone(), g.eval(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (idx, g)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let dz: Vec<String> = idx.iter().map(|j| format!("dz{}", j + 1)).collect();
            let basis = if dz.is_empty() { "1".to_string() } else { dz.join("^") };
            if g.len() > 1 {
                write!(f, "({g}) {basis}")?;
            } else if g.as_monomial().is_some_and(|(m, c)| m.is_one() && c.is_one()) {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{g} {basis}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn wedge_examples() {
        let n = 3;
        let d1 = KForm::dz(n, 0);
        let d2 = KForm::dz(n, 1);
        assert_eq!(d1.wedge(&d2).unwrap(), KForm::basis(n, &[0, 1]).unwrap());
        assert_eq!(d2.wedge(&d1).unwrap(), KForm::basis(n, &[0, 1]).unwrap().neg());
        assert!(d1.wedge(&d1).unwrap().is_zero());

        // (z1 dz2) ^ (z2 dz1) = -z1 z2 dz1^dz2
        let a = KForm::term(n, &[1], z(n, 0)).unwrap();
        let b = KForm::term(n, &[0], z(n, 1)).unwrap();
        let expect = KForm::term(n, &[0, 1], z(n, 0).mul(&z(n, 1)).neg()).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), expect);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(
            KForm::dz(3, 0).wedge(&KForm::dz(4, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn d_examples() {
        let n = 3;
        let w = KForm::term(n, &[1], z(n, 0)).unwrap();
        assert_eq!(w.ext_d(), KForm::basis(n, &[0, 1]).unwrap());
        let c = KForm::term(n, &[0, 2], Poly::constant(n, GaussRat::from_int(7))).unwrap();
        assert!(c.ext_d().is_zero());
        let w = KForm::term(n, &[0, 1], z(n, 2)).unwrap();
        assert_eq!(w.ext_d(), KForm::basis(n, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn interior_examples() {
        let n = 3;
        let w = KForm::basis(n, &[0, 1]).unwrap();
        let e1 = PolyVectorField::coordinate(n, 0);
        let e2 = PolyVectorField::coordinate(n, 1);
        assert_eq!(w.interior(&e1).unwrap(), KForm::dz(n, 1));
        assert_eq!(w.interior(&e2).unwrap(), KForm::dz(n, 0).neg());
        let v = PolyVectorField::from_components(vec![z(n, 2), Poly::zero(n), Poly::zero(n)]).unwrap();
        let w = KForm::term(n, &[0, 1], z(n, 0)).unwrap();
        let expect = KForm::term(n, &[1], z(n, 0).mul(&z(n, 2))).unwrap();
        assert_eq!(w.interior(&v).unwrap(), expect);
        assert_eq!(w.interior_coord(1), KForm::term(n, &[0], z(n, 0).neg()).unwrap());
    }

    #[test]
    fn term_normalizes_order() {
        let w = KForm::basis(3, &[2, 0, 1]).unwrap();
        // (3,1,2) -> (1,2,3) is an even permutation
        assert_eq!(w, KForm::basis(3, &[0, 1, 2]).unwrap());
        assert!(KForm::basis(3, &[1, 1]).unwrap().is_zero());
        assert!(KForm::basis(3, &[3]).is_err());
    }

    #[test]
    fn display() {
        let n = 5;
        let w = KForm::term(n, &[0, 1, 2], z(n, 3).mul(&z(n, 4))).unwrap();
        assert_eq!(w.to_string(), "z4*z5 dz1^dz2^dz3");
    }
}
