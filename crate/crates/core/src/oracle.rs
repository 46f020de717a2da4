//! Reference computations that share no code path with the engine. Used by
//! the self-test and by the test suites.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::linalg::IntMatrix;

/// Characteristic polynomial coefficients `c[0..=n]` of `det(xI - A)`
/// (Faddeev–LeVerrier; every division is exact).
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.dim();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::from(1);
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    let rows = a.rows();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(&rows, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am = matmul(&rows, &m);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[n - k] = q;
    }
    c
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn sign_changes<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> i64 {
    let signs: Vec<bool> = coeffs.filter(|c| !c.is_zero()).map(Signed::is_positive).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Signature by counting positive and negative eigenvalues with Descartes'
/// rule of signs, which is exact for real-rooted polynomials such as the
/// characteristic polynomial of a symmetric matrix.
pub fn signature_by_root_count(a: &IntMatrix) -> i64 {
    let c = characteristic_polynomial(a);
    let positive = sign_changes(c.iter());
    let mirrored: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(i, x)| if i.is_odd() { -x } else { x.clone() })
        .collect();
    let negative = sign_changes(mirrored.iter());
    positive - negative
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(a: &IntMatrix) -> usize {
    let mut rows = a.rows();
    let n = rows.len();
    let mut r = 0;
    for col in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let g = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = &*x * &pivot[col] - p * &g;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        let a = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]);
        // x^2 + 4x + 3
        assert_eq!(characteristic_polynomial(&a), vec![3.into(), 4.into(), 1.into()]);
        assert_eq!(signature_by_root_count(&a), -2);
        let h = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(signature_by_root_count(&h), 0);
        assert_eq!(signature_by_root_count(&IntMatrix::zeros(0)), 0);
        assert_eq!(signature_by_root_count(&IntMatrix::zeros(3)), 0);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        assert_eq!(rank(&IntMatrix::zeros(2)), 0);
    }
}
