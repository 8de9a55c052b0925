//! Exact integer linear algebra: fraction-free elimination over big integers
//! and unimodular column reduction.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = DMatrix<i64>;

fn to_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| BigInt::from(m[(i, j)])).collect()).collect()
}

/// Bareiss elimination in place. Returns the rank and the sign of the row
/// permutation used.
fn bareiss(a: &mut [Vec<BigInt>]) -> (usize, i32) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    (r, sign)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let mut a = to_big(m);
    bareiss(&mut a).0
}

pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.nrows() != m.ncols() {
        return Err(Error::invariant("determinant of a non-square matrix"));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = to_big(m);
    let (r, sign) = bareiss(&mut a);
    if r < n {
        return Ok(BigInt::zero());
    }
    Ok(&a[n - 1][n - 1] * BigInt::from(sign))
}

/// Product with overflow detection.
pub fn mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::invariant(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let mut out = IntMatrix::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let x = a[(i, k)] as i128;
            if x == 0 {
                continue;
            }
            for j in 0..b.ncols() {
                let v = out[(i, j)] as i128 + x * b[(k, j)] as i128;
                out[(i, j)] =
                    i64::try_from(v).map_err(|_| Error::Numerical("integer matrix product overflows i64".into()))?;
            }
        }
    }
    Ok(out)
}

/// Columns form a basis of the integer kernel `{x ∈ Zⁿ : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Result<IntMatrix> {
    let rows = m.nrows();
    let n = m.ncols();
    let mut a: Vec<Vec<i128>> = (0..rows).map(|i| (0..n).map(|j| m[(i, j)] as i128).collect()).collect();
    // u[j] is column j of the unimodular transform
    let mut u: Vec<Vec<i128>> = (0..n).map(|j| (0..n).map(|i| i128::from(i == j)).collect()).collect();
    let overflow = || Error::Numerical("kernel reduction overflows".into());
    let mut r = 0;
    for i in 0..rows {
        if r == n {
            break;
        }
        while let Some(p) = (r..n).filter(|&j| a[i][j] != 0).min_by_key(|&j| a[i][j].abs()) {
            if p != r {
                for row in a.iter_mut() {
                    row.swap(p, r);
                }
                u.swap(p, r);
            }
            let pivot = a[i][r];
            let mut done = true;
            for j in r + 1..n {
                if a[i][j] == 0 {
                    continue;
                }
                let q = Integer::div_floor(&a[i][j], &pivot);
                for row in a.iter_mut() {
                    row[j] = row[j].checked_sub(q.checked_mul(row[r]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
                for t in 0..n {
                    u[j][t] = u[j][t].checked_sub(q.checked_mul(u[r][t]).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
                if a[i][j] != 0 {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    let k = n - r;
    let mut out = IntMatrix::zeros(n, k);
    for (c, col) in u[r..].iter().enumerate() {
        for (t, &v) in col.iter().enumerate() {
            out[(t, c)] = i64::try_from(v).map_err(|_| overflow())?;
        }
    }
    Ok(out)
}

pub fn to_f64(m: &IntMatrix) -> DMatrix<f64> {
    m.map(|x| x as f64)
}

/// `|det|` of the lattice spanned by the columns of a `2 × k` matrix, i.e.
/// its index in `Z²` (0 when the columns do not span the plane).
pub fn plane_lattice_index(m: &IntMatrix) -> u64 {
    let mut g = BigInt::zero();
    for a in 0..m.ncols() {
        for b in a + 1..m.ncols() {
            let minor =
                BigInt::from(m[(0, a)]) * BigInt::from(m[(1, b)]) - BigInt::from(m[(0, b)]) * BigInt::from(m[(1, a)]);
            g = g.gcd(&minor);
        }
    }
    g.abs().try_into().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
    }

    #[test]
    fn small_ranks_and_determinants() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m).unwrap(), BigInt::zero());
        let j = mat(&[&[0, 1], &[-1, 0]]);
        assert_eq!(determinant(&j).unwrap(), BigInt::one());
        let p = mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(determinant(&p).unwrap(), BigInt::from(-1));
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 3]])), 1);
    }

    #[test]
    fn kernel_of_projection() {
        let m = mat(&[&[1, 1, 0, 2], &[0, 1, 1, 0]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.ncols(), 2);
        assert!(mul(&m, &k).unwrap().iter().all(|&x| x == 0));
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn lattice_index() {
        assert_eq!(plane_lattice_index(&mat(&[&[1, 0], &[0, 1]])), 1);
        assert_eq!(plane_lattice_index(&mat(&[&[2, 0, 4], &[0, 2, 2]])), 4);
        assert_eq!(plane_lattice_index(&mat(&[&[1, 2], &[1, 2]])), 0);
    }

    /// Rank by rational Gaussian elimination with `f64` on tiny entries.
    fn float_rank(m: &IntMatrix) -> usize {
        let mut a = to_f64(m);
        let (rows, cols) = a.shape();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[(i, c)].abs() > 1e-9) else {
                continue;
            };
            a.swap_rows(p, r);
            for i in 0..rows {
                if i != r {
                    let f = a[(i, c)] / a[(r, c)];
                    for j in 0..cols {
                        a[(i, j)] -= f * a[(r, j)];
                    }
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn bareiss_rank_matches_float_rank(entries in proptest::collection::vec(-2i64..=2, 20)) {
            let m = IntMatrix::from_row_slice(4, 5, &entries);
            prop_assert_eq!(rank(&m), float_rank(&m));
        }

        #[test]
        fn kernel_columns_are_independent_solutions(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let m = IntMatrix::from_row_slice(2, 6, &entries);
            let k = integer_kernel(&m).unwrap();
            prop_assert_eq!(k.ncols(), 6 - rank(&m));
            prop_assert!(mul(&m, &k).unwrap().iter().all(|&x| x == 0));
            prop_assert_eq!(rank(&k), k.ncols());
        }
    }
}
