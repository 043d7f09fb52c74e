//! The general section: one free coefficient per basis monomial, grouped by
//! index tuple in the closed shapes of the three named resonance classes.

use std::fmt;

use super::{solve_sections, SectionProblem};
use crate::error::{Error, Result};
use crate::exterior::{IndexTuple, KForm, Monomial, Poly};
use crate::rational::GaussRat;
use crate::spectrum::HopfClass;

/// Coefficient of one `dz_I`: `factor · Σ c_j · z^{β_j}` where the `β_j`
/// are homogeneous of degree `block_degree` (in the block variables for the
/// weak case, all variables for the classical case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricTerm {
    pub idx: IndexTuple,
    /// Monomial content shared by every term of this coefficient.
    pub factor: Monomial,
    /// Degree of the polynomial part after dividing out `factor`.
    pub block_degree: u32,
    /// Number of indices of `I` inside the repeated block (weak case).
    pub s: Option<usize>,
    /// `(symbol, full monomial)`; symbols are global indices `c_j`.
    pub symbols: Vec<(usize, Monomial)>,
}

/// A k-form whose coefficients are linear in free symbols `c₀, c₁, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricForm {
    pub n: usize,
    pub k: usize,
    pub case: HopfClass,
    pub terms: Vec<ParametricTerm>,
}

impl ParametricForm {
    pub fn num_symbols(&self) -> usize {
        self.terms.iter().map(|t| t.symbols.len()).sum()
    }

    /// Substitute field values for the symbols (indexed as `c_j`).
    pub fn specialize(&self, values: &[GaussRat]) -> Result<KForm> {
        if values.len() != self.num_symbols() {
            return Err(Error::DimensionMismatch {
                expected: self.num_symbols(),
                found: values.len(),
            });
        }
        let mut out = KForm::zero(self.n, self.k);
        for t in &self.terms {
            let mut g = Poly::zero(self.n);
            for (sym, m) in &t.symbols {
                g.add_term(m.clone(), &values[*sym]);
            }
            out = out.add(&KForm::from_terms(self.n, self.k, [(t.idx.clone(), g)])?)?;
        }
        Ok(out)
    }

    /// All symbols set to one.
    pub fn generic_member(&self) -> KForm {
        self.specialize(&vec![GaussRat::from_int(1); self.num_symbols()])
            .expect("symbol count matches")
    }
}

impl fmt::Display for ParametricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let inner: Vec<String> = t
                .symbols
                .iter()
                .map(|(sym, m)| {
                    let rest = m.div(&t.factor);
                    if rest.is_one() {
                        format!("c{sym}")
                    } else {
                        format!("c{sym}*{rest}")
                    }
                })
                .collect();
            let dz: Vec<String> = t.idx.iter().map(|j| format!("dz{}", j + 1)).collect();
            if let [(sym, m)] = t.symbols.as_slice() {
                if m.is_one() {
                    write!(f, "c{sym} {}", dz.join("^"))?;
                } else {
                    write!(f, "c{sym}*{m} {}", dz.join("^"))?;
                }
            } else if t.factor.is_one() {
                write!(f, "({}) {}", inner.join(" + "), dz.join("^"))?;
            } else {
                write!(f, "{}*({}) {}", t.factor, inner.join(" + "), dz.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Parametric general section for the classical, no-resonance and weak
/// no-resonance classes.
pub fn general_section(p: &SectionProblem) -> Result<ParametricForm> {
    let block: Option<Vec<usize>> = match p.hopf_class() {
        HopfClass::GeneralResonant => return Err(Error::GeneralResonantUnsupported),
        HopfClass::WeakNoResonance { r, perm } => Some(perm[..*r].to_vec()),
        _ => None,
    };
    let n = p.n();
    let basis = solve_sections(p)?;
    let mut terms: Vec<ParametricTerm> = Vec::new();
    for (sym, sol) in basis.solutions.iter().enumerate() {
        if terms.last().map(|t| &t.idx) != Some(&sol.idx) {
            let s = block
                .as_ref()
                .map(|b| sol.idx.iter().filter(|i| b.contains(i)).count());
            terms.push(ParametricTerm {
                idx: sol.idx.clone(),
                factor: sol.alpha.clone(),
                block_degree: 0,
                s,
                symbols: Vec::new(),
            });
        }
        let t = terms.last_mut().expect("pushed above");
        t.symbols.push((sym, sol.alpha.clone()));
    }
    for t in &mut terms {
        t.factor = match (&block, p.hopf_class()) {
            // classical coefficients are full homogeneous polynomials
            (_, HopfClass::Classical) => Monomial::one(n),
            (Some(b), _) => {
                let mut e = t.symbols[0].1 .0.clone();
                for &i in b {
                    e[i] = 0;
                }
                Monomial(e)
            }
            _ => t.symbols[0].1.clone(),
        };
        t.block_degree = t.symbols[0].1.degree() - t.factor.degree();
    }
    Ok(ParametricForm {
        n,
        k: p.k(),
        case: p.hopf_class().clone(),
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::spectrum::Spectrum;

    #[test]
    fn classical_n3_k1_m2() {
        let s = Spectrum::exact(vec![rat(1, 2); 3]).unwrap();
        let p = SectionProblem::with_exponents(s, 1, vec![2, 0, 0]).unwrap();
        let g = general_section(&p).unwrap();
        assert_eq!(g.num_symbols(), 9);
        assert_eq!(g.terms.len(), 3);
        assert!(g.terms.iter().all(|t| t.block_degree == 1 && t.factor.is_one()));
    }

    #[test]
    fn no_resonance_shapes() {
        let s = Spectrum::symbolic(vec![1, 2, 3, 4]).unwrap();
        let p = SectionProblem::with_exponents(s, 2, vec![1, 1, 0, 0]).unwrap();
        let g = general_section(&p).unwrap();
        assert_eq!(g.num_symbols(), 1);
        assert_eq!(g.to_string(), "c0 dz1^dz2");

        let s = Spectrum::symbolic(vec![1, 2, 3]).unwrap();
        let p = SectionProblem::with_exponents(s, 1, vec![1, 1, 1]).unwrap();
        let g = general_section(&p).unwrap();
        assert_eq!(g.to_string(), "c0*z2*z3 dz1 + c1*z1*z3 dz2 + c2*z1*z2 dz3");
    }

    #[test]
    fn weak_shape_factors_outside_block() {
        let s = Spectrum::exact(vec![rat(1, 2), rat(1, 2), rat(1, 3), rat(1, 5)]).unwrap();
        let p = SectionProblem::with_exponents(s, 1, vec![2, 0, 1, 0]).unwrap();
        let g = general_section(&p).unwrap();
        assert_eq!(g.num_symbols(), 7);
        let dz1 = &g.terms[0];
        assert_eq!(dz1.factor, Monomial(vec![0, 0, 1, 0]));
        assert_eq!(dz1.block_degree, 1);
        assert_eq!(dz1.s, Some(1));
        let dz3 = &g.terms[2];
        assert_eq!(dz3.factor, Monomial::one(4));
        assert_eq!(dz3.block_degree, 2);
        assert_eq!(dz3.s, Some(0));
        let w = g.generic_member();
        assert_eq!(w.num_terms(), 3);
    }

    #[test]
    fn resonant_rejected() {
        let s = Spectrum::exact(vec![rat(1, 2), rat(1, 4), rat(1, 3)]).unwrap();
        let p = SectionProblem::with_exponents(s, 1, vec![1, 1, 1]).unwrap();
        assert!(matches!(general_section(&p), Err(Error::GeneralResonantUnsupported)));
    }
}
