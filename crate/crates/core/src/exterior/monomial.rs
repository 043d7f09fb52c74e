use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `α ∈ ℕⁿ` of `z^α`.
///
/// Ordered graded-lexicographically: total degree first, then the first
/// differing exponent (larger exponent of `z₁` sorts later).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variables with positive exponent, as a bitmask.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// `∂/∂zᵢ` as (multiplier, monomial), `None` when the exponent is zero.
    pub fn deriv(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.0[i];
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[i] -= 1;
        Some((e, Monomial(out)))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "z{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All exponent vectors in ℕⁿ of total degree exactly `d`, in grlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, 0, d, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// All exponent vectors of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|e| monomials_of_degree(n, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![0, 0, 2]);
        let b = Monomial(vec![1, 1, 0]);
        let c = Monomial(vec![3, 0, 0]);
        assert!(a < b);
        assert!(b < c);
        assert!(Monomial::one(3) < a);
    }

    #[test]
    fn degree_counts_match_stars_and_bars() {
        // C(d+n-1, n-1)
        assert_eq!(monomials_of_degree(5, 1).len(), 5);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }

    #[test]
    fn display() {
        assert_eq!(Monomial(vec![0, 2, 0, 1]).to_string(), "z2^2*z4");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }
}
