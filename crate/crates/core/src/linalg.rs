//! Exact integer linear algebra: congruence signature, fraction-free
//! determinants, and Alexander polynomials of Seifert matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("cannot normalize Alexander polynomial: {0}")]
    Normalization(String),
}

/// Square matrix of arbitrary-precision integers. Zero-sized matrices are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// `V + V^T`
    pub fn symmetrized(&self) -> Self {
        self.add(&self.transpose())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> Self {
        let n = self.n + other.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j).clone());
            }
        }
        m
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Signature of a symmetric integer matrix by rational congruence
/// diagonalization.
///
/// A nonzero diagonal pivot contributes its sign. When the diagonal of the
/// remaining block vanishes but some off-diagonal entry `a` does not, the
/// 2x2 block `[[0, a], [a, 0]]` is split off; it is hyperbolic and
/// contributes zero.
pub fn symmetric_signature(m: &IntMatrix) -> Result<i64, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut sig = 0i64;
    while !a.is_empty() {
        let n = a.len();
        if let Some(k) = (0..n).find(|&k| !a[k][k].is_zero()) {
            let pivot = a[k][k].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            let col: Vec<BigRational> = (0..n).map(|i| a[i][k].clone()).collect();
            a = schur_1(&a, k, &pivot, &col);
            continue;
        }
        let Some((i, j)) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a = schur_hyperbolic(&a, i, j);
    }
    Ok(sig)
}

fn schur_1(
    a: &[Vec<BigRational>],
    k: usize,
    pivot: &BigRational,
    col: &[BigRational],
) -> Vec<Vec<BigRational>> {
    let keep: Vec<usize> = (0..a.len()).filter(|&i| i != k).collect();
    keep.iter()
        .map(|&r| {
            let f = &col[r] / pivot;
            keep.iter().map(|&c| &a[r][c] - &f * &col[c]).collect()
        })
        .collect()
}

/// Removes rows/columns `i, j` where `a[i][i] = a[j][j] = 0`, `a[i][j] = h != 0`.
/// The pivot block inverse is `[[0, 1/h], [1/h, 0]]`.
fn schur_hyperbolic(a: &[Vec<BigRational>], i: usize, j: usize) -> Vec<Vec<BigRational>> {
    let h = a[i][j].clone();
    let keep: Vec<usize> = (0..a.len()).filter(|&r| r != i && r != j).collect();
    keep.iter()
        .map(|&r| {
            keep.iter()
                .map(|&c| {
                    let corr = (&a[r][i] * &a[j][c] + &a[r][j] * &a[i][c]) / &h;
                    &a[r][c] - corr
                })
                .collect()
        })
        .collect()
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_int(m: &IntMatrix) -> BigInt {
    let rows = m.rows();
    bareiss(rows, BigInt::one(), BigInt::zero(), |a, b| a / b)
}

/// Bareiss elimination over an integral domain. `exact_div` must only be
/// called on divisible pairs, which Bareiss guarantees.
fn bareiss<R, F>(mut a: Vec<Vec<R>>, one: R, zero: R, exact_div: F) -> R
where
    R: Clone + PartialEq,
    for<'x> &'x R: std::ops::Mul<&'x R, Output = R> + std::ops::Sub<&'x R, Output = R>,
    for<'x> &'x R: std::ops::Neg<Output = R>,
    F: Fn(&R, &R) -> R,
{
    let n = a.len();
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if a[k][k] == zero {
            match (k + 1..n).find(|&r| a[r][k] != zero) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// `det(V - t V^T)` as an honest polynomial in `t`.
pub fn seifert_determinant(v: &IntMatrix) -> LaurentPoly {
    let n = v.dim();
    let rows: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly::from_dense(0, vec![v.get(i, j).clone(), -v.get(j, i)]))
                .collect()
        })
        .collect();
    bareiss(rows, LaurentPoly::one(), LaurentPoly::zero(), |a, b| {
        a.div_exact(b).expect("Bareiss division is exact over Z[t]")
    })
}

/// The Alexander polynomial `det(V - t V^T)`, normalized to the symmetric
/// representative with value 1 at `t = 1`.
pub fn alexander_from_seifert(v: &IntMatrix) -> Result<LaurentPoly, LinalgError> {
    let raw = seifert_determinant(v);
    normalize_alexander(&raw)
}

/// Multiplies by the unit `±t^k` that makes `p` symmetric with `p(1) = 1`.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly, LinalgError> {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return Err(LinalgError::Normalization("polynomial is zero".into()));
    };
    if (lo + hi) % 2 != 0 {
        return Err(LinalgError::Normalization(format!(
            "exponent span [{lo}, {hi}] has no center"
        )));
    }
    let mut q = p.shift(-(lo + hi) / 2);
    let at_one = q.eval_at_one();
    if at_one == -BigInt::one() {
        q = -q;
    } else if !at_one.is_one() {
        return Err(LinalgError::Normalization(format!("value at t=1 is {at_one}")));
    }
    if !q.is_symmetric() {
        return Err(LinalgError::Normalization(format!("{q} is not symmetric")));
    }
    Ok(q)
}
