//! Exact linear algebra over the rationals.
//!
//! Systems are solved by fraction-free (Bareiss) elimination on an
//! integer-scaled copy of the augmented matrix, so no intermediate result
//! ever leaves the integers; the final back-substitution produces exact
//! rational values. Underdetermined systems yield the particular solution
//! with all free variables set to zero.

use crate::arith::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Solved {
        /// One solution vector (free variables zero).
        values: Vec<Rational>,
        /// Columns that carried a pivot, in elimination order.
        pivot_cols: Vec<usize>,
    },
}

/// Solve `A·u = rhs` for `u` over the rationals.
///
/// `rows` holds the coefficient rows; all rows must have `cols` entries.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], cols: usize) -> Solution {
    assert_eq!(rows.len(), rhs.len());
    // Scale each row to integers.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for (row, b) in rows.iter().zip(rhs) {
        assert_eq!(row.len(), cols);
        let mut lcm = BigInt::one();
        for c in row.iter().chain(std::iter::once(b)) {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = row
            .iter()
            .chain(std::iter::once(b))
            .map(|c| c.numer() * &lcm / c.denom())
            .collect();
        m.push(scaled);
    }

    let n_rows = m.len();
    let width = cols + 1;
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..n_rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        // Forward-only elimination: the Bareiss division by the previous
        // pivot is exact for rows below the current one.
        for r in rank + 1..n_rows {
            if m[r][col].is_zero() {
                // Still scale to keep the minor structure consistent.
                for j in 0..width {
                    if j == col {
                        continue;
                    }
                    let v = (&m[rank][col] * &m[r][j]) / &prev;
                    m[r][j] = v;
                }
                continue;
            }
            for j in 0..width {
                if j == col {
                    continue;
                }
                let v = (&m[rank][col] * &m[r][j] - &m[r][col] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        pivot_cols.push(col);
        rank += 1;
        if rank == n_rows {
            break;
        }
    }

    // Any remaining row is zero in every coefficient; a nonzero right-hand
    // side there is a contradiction.
    for row in m.iter().skip(rank) {
        debug_assert!(row[..cols].iter().all(Zero::is_zero));
        if !row[cols].is_zero() {
            return Solution::Inconsistent;
        }
    }

    // Back-substitute in rational arithmetic, free variables at zero.
    let mut values = vec![Rational::zero(); cols];
    for (k, &col) in pivot_cols.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(m[k][cols].clone());
        for j in col + 1..cols {
            if !m[k][j].is_zero() {
                acc -= Rational::from_integer(m[k][j].clone()) * &values[j];
            }
        }
        values[col] = acc / Rational::from_integer(m[k][col].clone());
    }
    Solution::Solved { values, pivot_cols }
}

/// Fraction-free determinant of a polynomial matrix (Bareiss). The ring
/// must support exact division by earlier pivots, which [`crate::arith::Poly`]
/// does.
pub fn bareiss_determinant_poly(mut m: Vec<Vec<crate::arith::Poly>>) -> crate::arith::Poly {
    use crate::arith::Poly;
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn solves_unique_system() {
        // 4a + 8b = -18 ; -4a + 4b = 0  =>  a = b = -3/2
        let rows = vec![vec![int(4), int(8)], vec![int(-4), int(4)]];
        let rhs = vec![int(-18), int(0)];
        match solve(&rows, &rhs, 2) {
            Solution::Solved { values, .. } => {
                assert_eq!(values, vec![rat(-3, 2), rat(-3, 2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_inconsistency() {
        // a = -2 and a = -1 simultaneously.
        let rows = vec![vec![int(1)], vec![int(1)]];
        let rhs = vec![int(-2), int(-1)];
        assert_eq!(solve(&rows, &rhs, 1), Solution::Inconsistent);
    }

    #[test]
    fn underdetermined_sets_free_variables_to_zero() {
        let rows = vec![vec![int(1), int(1), int(2)]];
        let rhs = vec![int(3)];
        match solve(&rows, &rhs, 3) {
            Solution::Solved { values, pivot_cols } => {
                assert_eq!(pivot_cols, vec![0]);
                assert_eq!(values, vec![int(3), int(0), int(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn polynomial_determinant() {
        use crate::arith::Poly;
        let x = Poly::var_x();
        let y = Poly::var_y();
        // det [[x, y], [y, x]] = x^2 - y^2
        let det = bareiss_determinant_poly(vec![
            vec![x.clone(), y.clone()],
            vec![y.clone(), x.clone()],
        ]);
        assert_eq!(det, &(&x * &x) - &(&y * &y));
        // Singular matrix.
        let det = bareiss_determinant_poly(vec![
            vec![x.clone(), y.clone()],
            vec![x.clone(), y.clone()],
        ]);
        assert!(det.is_zero());
    }

    #[test]
    fn rational_rows_are_scaled_exactly() {
        let rows = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(-1, 6)]];
        let rhs = vec![int(1), int(2)];
        match solve(&rows, &rhs, 2) {
            Solution::Solved { values, .. } => {
                let a = &values[0];
                let b = &values[1];
                assert_eq!(a * rat(1, 2) + b * rat(1, 3), int(1));
                assert_eq!(a * rat(1, 4) + b * rat(-1, 6), int(2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
