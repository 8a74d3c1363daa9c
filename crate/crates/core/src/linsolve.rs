//! Exact linear solver over Q.
//!
//! Forward elimination is fraction-free (Bareiss) over big integers after
//! clearing row denominators; back-substitution is exact over rationals.
//! Underdetermined systems get their free variables set to zero, in column
//! order, so the returned solution is deterministic.

use num_bigint::BigInt;
use num_integer::lcm;
use num_traits::{One, Zero};

use crate::rational::BigRational;

/// Solve `matrix * v = rhs` exactly. Returns one solution when the system
/// is consistent (free variables zeroed) and None otherwise.
///
/// Panics if the rows are ragged or rhs has the wrong length.
pub fn solve(matrix: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = matrix.len();
    assert_eq!(m, rhs.len(), "rhs length must match the row count");
    let n = matrix.first().map_or(0, |r| r.len());
    for row in matrix {
        assert_eq!(row.len(), n, "all rows must have the same length");
    }
    if n == 0 {
        return if rhs.iter().all(|b| b.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }

    // clear denominators row by row: augmented integer matrix [A | b]
    let mut aug: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for (row, b) in matrix.iter().zip(rhs) {
        let mut denoms = b.denom().clone();
        for a in row {
            denoms = lcm(denoms, a.denom().clone());
        }
        let mut int_row: Vec<BigInt> = Vec::with_capacity(n + 1);
        for a in row {
            int_row.push(a.numer() * (&denoms / a.denom()));
        }
        int_row.push(b.numer() * (&denoms / b.denom()));
        aug.push(int_row);
    }

    // fraction-free forward elimination with deterministic pivoting:
    // first row with a nonzero entry in the current column
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    let mut prev_pivot = BigInt::one();
    for col in 0..n {
        let pivot_row = (rank..m).find(|&r| !aug[r][col].is_zero());
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => continue, // free column
        };
        aug.swap(rank, pivot_row);
        for r in rank + 1..m {
            for c in col + 1..=n {
                let t = &aug[rank][col] * &aug[r][c] - &aug[r][col] * &aug[rank][c];
                debug_assert!((&t % &prev_pivot).is_zero());
                aug[r][c] = &t / &prev_pivot; // exact by the Bareiss identity
            }
            aug[r][col] = BigInt::zero();
        }
        prev_pivot = aug[rank][col].clone();
        pivot_cols.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }

    // inconsistency: a zeroed-out row with nonzero right-hand side
    for row in aug.iter().take(m).skip(rank) {
        if row[..n].iter().all(|a| a.is_zero()) && !row[n].is_zero() {
            return None;
        }
    }

    // exact back-substitution, free variables already zero
    let mut sol = vec![BigRational::zero(); n];
    for (i, &col) in pivot_cols.iter().enumerate().rev() {
        let mut acc = BigRational::from_integer(aug[i][n].clone());
        for c in col + 1..n {
            if !aug[i][c].is_zero() && !sol[c].is_zero() {
                acc -= BigRational::from_integer(aug[i][c].clone()) * &sol[c];
            }
        }
        sol[col] = acc / BigRational::from_integer(aug[i][col].clone());
    }
    Some(sol)
}
