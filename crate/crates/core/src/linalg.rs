//! Dense fraction-free (Bareiss) elimination.
//!
//! Every division in the forward sweep is exact when the input is integral,
//! so integer-valued systems stay integer-valued until back substitution.
//! Over a field the same recurrence is valid as written.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[T]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Solves `self * x = rhs`.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        assert_eq!(rhs.len(), self.n);
        let n = self.n;
        let w = n + 1;
        let mut a: Vec<T> = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend_from_slice(&self.data[i * n..(i + 1) * n]);
            a.push(rhs[i].clone());
        }
        let mut prev = T::one();
        for k in 0..n {
            let pivot = pick_pivot(&a, w, k, n).ok_or(Error::Singular)?;
            if pivot != k {
                for j in 0..w {
                    a.swap(k * w + j, pivot * w + j);
                }
            }
            let akk = a[k * w + k].clone();
            for i in k + 1..n {
                let aik = a[i * w + k].clone();
                for j in k + 1..w {
                    let v = (a[i * w + j].clone() * akk.clone() - aik.clone() * a[k * w + j].clone()) / prev.clone();
                    a[i * w + j] = v;
                }
                a[i * w + k] = T::zero();
            }
            prev = akk;
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut s = a[i * w + n].clone();
            for j in i + 1..n {
                s = s - a[i * w + j].clone() * x[j].clone();
            }
            x[i] = s / a[i * w + i].clone();
        }
        Ok(x)
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`, without
    /// row exchanges. Under Bareiss the k-th pivot is exactly the k-th minor.
    pub fn leading_principal_minors(&self) -> Vec<T> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut out = Vec::with_capacity(n);
        let mut prev = T::one();
        for k in 0..n {
            let akk = a[k * n + k].clone();
            out.push(akk.clone());
            if akk.is_zero() {
                // later minors need pivoting; report them as zero
                out.resize(n, T::zero());
                break;
            }
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j].clone() * akk.clone() - aik.clone() * a[k * n + j].clone()) / prev.clone();
                }
            }
            prev = akk;
        }
        out
    }

    pub fn determinant(&self) -> T {
        if self.n == 0 {
            return T::one();
        }
        let mut a = self.data.clone();
        let n = self.n;
        let mut prev = T::one();
        let mut sign = T::one();
        for k in 0..n {
            let Some(pivot) = pick_pivot(&a, n, k, n) else {
                return T::zero();
            };
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                sign = -sign;
            }
            let akk = a[k * n + k].clone();
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j].clone() * akk.clone() - aik.clone() * a[k * n + j].clone()) / prev.clone();
                }
            }
            prev = akk;
        }
        sign * a[n * n - 1].clone()
    }
}

/// Exact types take the first nonzero entry; floating types take the
/// largest magnitude.
fn pick_pivot<T: Scalar>(a: &[T], w: usize, k: usize, n: usize) -> Option<usize> {
    if T::EXACT {
        (k..n).find(|&i| !a[i * w + k].is_zero())
    } else {
        (k..n)
            .filter(|&i| !a[i * w + k].is_zero())
            .max_by(|&i, &j| a[i * w + k].abs().partial_cmp(&a[j * w + k].abs()).unwrap_or(std::cmp::Ordering::Equal))
    }
}
