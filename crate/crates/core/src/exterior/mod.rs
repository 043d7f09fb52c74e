//! Exact sparse polynomials and exterior calculus on ℂⁿ.

mod form;
mod monomial;
mod poly;
mod vector_field;

pub use form::{IndexTuple, KForm};
pub use monomial::{monomials_of_degree, monomials_up_to, Monomial};
pub use poly::Poly;
pub use vector_field::PolyVectorField;


use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Pullback by the contraction `f(z) = (μ₁z₁, …, μₙzₙ)`.
pub fn pullback_f(s: &Spectrum, w: &KForm) -> Result<KForm> {
    let mu = s.exact_values().ok_or(Error::SymbolicModeUnsupported)?;
    if w.n() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: w.n() });
    }
    Ok(w.rescale(mu))
}

/// Every strictly increasing `k`-subset of `0..n`, in lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> Vec<IndexTuple> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
