//! Integer row reduction: Hermite normal form, integer kernels, and
//! membership/reduction against an HNF basis.
//!
//! Everything works on row vectors over `i64`. Entries stay tiny for the
//! relation lattices this crate builds; arithmetic is checked and panics on
//! overflow rather than wrapping.

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("lattice arithmetic overflow")
}

fn sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("lattice arithmetic overflow")
}

/// `row_a -= q * row_b`
fn axpy(row_a: &mut [i64], q: i64, row_b: &[i64]) {
    if q == 0 {
        return;
    }
    for (a, b) in row_a.iter_mut().zip(row_b) {
        *a = sub(*a, mul(q, *b));
    }
}

/// Result of unimodular row reduction `U·A = H`.
#[derive(Clone, Debug)]
pub struct RowReduction {
    /// Row echelon form; the first `rank` rows are nonzero.
    pub h: Vec<Vec<i64>>,
    /// Unimodular transform (rows of `U`).
    pub u: Vec<Vec<i64>>,
    pub rank: usize,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

/// Reduce `a` (rows × cols) to echelon form with positive pivots, tracking
/// the unimodular transform. Entries above pivots are reduced into
/// `[0, pivot)`, so the nonzero rows of `h` form the canonical HNF of the
/// row lattice.
pub fn row_reduce(a: &[Vec<i64>], cols: usize) -> RowReduction {
    let rows = a.len();
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..rows)
        .map(|i| {
            let mut e = vec![0; rows];
            e[i] = 1;
            e
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below r
            let best = (r..rows)
                .filter(|&i| h[i][c] != 0)
                .min_by_key(|&i| h[i][c].unsigned_abs());
            let Some(best) = best else { break };
            h.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c] != 0 {
                    let q = h[i][c].div_euclid(h[r][c]);
                    let (top, rest) = h.split_at_mut(i);
                    axpy(&mut rest[0], q, &top[r]);
                    let (utop, urest) = u.split_at_mut(i);
                    axpy(&mut urest[0], q, &utop[r]);
                    if h[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows && h[r][c] != 0 {
            if h[r][c] < 0 {
                h[r].iter_mut().for_each(|x| *x = -*x);
                u[r].iter_mut().for_each(|x| *x = -*x);
            }
            let p = h[r][c];
            for i in 0..r {
                let q = h[i][c].div_euclid(p);
                let (top, rest) = h.split_at_mut(r);
                axpy(&mut top[i], q, &rest[0]);
                let (utop, urest) = u.split_at_mut(r);
                axpy(&mut utop[i], q, &urest[0]);
            }
            pivots.push(c);
            r += 1;
        }
    }
    RowReduction {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Canonical Hermite normal form of the lattice spanned by `rows`.
pub fn hnf(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let red = row_reduce(rows, cols);
    red.h.into_iter().take(red.rank).collect()
}

/// Basis (in HNF) of `{x ∈ Zⁿ : M·x = 0}` where `m` has `n` columns.
pub fn integer_kernel(m: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // rows of A = Mᵀ; left kernel of A is the kernel of M
    let a: Vec<Vec<i64>> = (0..n)
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect();
    let red = row_reduce(&a, m.len());
    let kernel: Vec<Vec<i64>> = red.u[red.rank..].to_vec();
    hnf(&kernel, n)
}

/// Integer solution `x` of `M·x = t`, if one exists.
pub fn solve(m: &[Vec<i64>], n: usize, t: &[i64]) -> Option<Vec<i64>> {
    let a: Vec<Vec<i64>> = (0..n)
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect();
    let red = row_reduce(&a, m.len());
    // yᵀ·H = tᵀ, then xᵀ = yᵀ·U
    let mut residual = t.to_vec();
    let mut y = vec![0i64; n];
    for (i, &p) in red.pivots.iter().enumerate() {
        if residual[p] % red.h[i][p] != 0 {
            return None;
        }
        y[i] = residual[p] / red.h[i][p];
        axpy(&mut residual, y[i], &red.h[i]);
    }
    if residual.iter().any(|&v| v != 0) {
        return None;
    }
    let mut x = vec![0i64; n];
    for (yi, urow) in y.iter().zip(&red.u) {
        for (xj, uj) in x.iter_mut().zip(urow) {
            *xj = xj
                .checked_add(mul(*yi, *uj))
                .expect("lattice arithmetic overflow");
        }
    }
    Some(x)
}

fn pivot_of(row: &[i64]) -> usize {
    row.iter()
        .position(|&v| v != 0)
        .expect("HNF rows are nonzero")
}

/// Membership of `v` in the lattice with HNF basis `basis`.
pub fn is_member(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let p = pivot_of(row);
        if v[..p].iter().any(|&x| x != 0) {
            return false;
        }
        if v[p] % row[p] != 0 {
            return false;
        }
        let q = v[p] / row[p];
        axpy(&mut v, q, row);
    }
    v.iter().all(|&x| x == 0)
}

/// Canonical representative of `v` modulo the lattice: every pivot
/// coordinate lands in `[0, pivot)`.
pub fn reduce_mod(basis: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    for row in basis {
        let p = pivot_of(row);
        let q = v[p].div_euclid(row[p]);
        axpy(&mut v, q, row);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&[vec![2, -1, 0], vec![4, -2, 0]], 3);
        let b = hnf(&[vec![-2, 1, 0]], 3);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![2, -1, 0]]);

        let diff1 = hnf(&[vec![1, -1, 0], vec![0, 1, -1]], 3);
        let diff2 = hnf(&[vec![1, 0, -1], vec![1, -1, 0]], 3);
        assert_eq!(diff1, diff2);
    }

    #[test]
    fn kernel_of_prime_exponents() {
        // primes 2 and 3 for (1/2, 1/4, 1/3): exponents of the reciprocals
        let m = vec![vec![1, 2, 0], vec![0, 0, 1]];
        assert_eq!(integer_kernel(&m, 3), vec![vec![2, -1, 0]]);
        let m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(integer_kernel(&m, 3).is_empty());
    }

    #[test]
    fn solve_and_reject() {
        let m = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(solve(&m, 2, &[1, 1]), Some(vec![1, 1]));
        let m = vec![vec![2, 4]];
        assert_eq!(solve(&m, 2, &[3]), None);
        let x = solve(&m, 2, &[6]).unwrap();
        assert_eq!(2 * x[0] + 4 * x[1], 6);
    }

    #[test]
    fn membership_and_reduction() {
        let basis = vec![vec![2, -1, 0]];
        assert!(is_member(&basis, &[4, -2, 0]));
        assert!(!is_member(&basis, &[1, 0, 0]));
        assert!(is_member(&[], &[0, 0, 0]));
        assert!(!is_member(&[], &[0, 1, 0]));
        assert_eq!(reduce_mod(&basis, &[5, 1, 7]), vec![1, 3, 7]);
    }
}
