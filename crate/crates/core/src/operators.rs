//! Rotation generators, the quadratic Casimir, the Euler operator and the
//! Euclidean Laplacian, all acting on polynomials in at most `N` variables.
//!
//! These satisfy `|X|^2 Lap_N = E^2 + (N-2) E + Casimir` on every
//! polynomial, where `E` is the Euler operator.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Ambient dimension `N >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbientDim(u32);

impl AmbientDim {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            Err(Error::InvalidArgument("ambient dimension must be at least 1".into()))
        } else {
            Ok(Self(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for AmbientDim {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

/// `M_jk = x_j d/dx_k - x_k d/dx_j`.
pub fn apply_mjk<T: Scalar>(j: u32, k: u32, p: &Polynomial<T>) -> Result<Polynomial<T>> {
    if j == k {
        return Err(Error::SameIndex(j));
    }
    if j == 0 || k == 0 {
        return Err(Error::InvalidArgument("variables are 1-based".into()));
    }
    Ok(mjk(j, k, p))
}

fn mjk<T: Scalar>(j: u32, k: u32, p: &Polynomial<T>) -> Polynomial<T> {
    let xj = Polynomial::var(j);
    let xk = Polynomial::var(k);
    &(&xj * &p.partial(k)) - &(&xk * &p.partial(j))
}

/// Sum of `M_jk^2` over all 2-element subsets `{j, k}` of `{1..N}`.
///
/// Pairs with neither index in the support of `p` contribute nothing and
/// are skipped.
pub fn casimir<T: Scalar>(p: &Polynomial<T>, n: AmbientDim) -> Result<Polynomial<T>> {
    p.check_dim(n.0)?;
    let support = p.vars();
    let mut acc = Polynomial::zero();
    for j in 1..=n.0 {
        for k in j + 1..=n.0 {
            if !support.contains(&j) && !support.contains(&k) {
                continue;
            }
            let once = mjk(j, k, p);
            acc = &acc + &mjk(j, k, &once);
        }
    }
    Ok(acc)
}

/// `sum_j x_j d/dx_j`: multiplies each homogeneous part by its degree.
pub fn euler<T: Scalar>(p: &Polynomial<T>) -> Polynomial<T> {
    Polynomial::from_terms(
        p.terms().map(|(m, c)| (m.clone(), c.clone() * T::from_u64_lossy(u64::from(m.degree())))),
    )
}

pub fn laplacian<T: Scalar>(p: &Polynomial<T>, n: AmbientDim) -> Result<Polynomial<T>> {
    p.check_dim(n.0)?;
    let mut acc = Polynomial::zero();
    for j in p.vars() {
        acc = &acc + &p.partial(j).partial(j);
    }
    Ok(acc)
}

/// Multiplication by `x1^2 + ... + xN^2`, the Hermite-pairing adjoint of the
/// Laplacian.
pub fn norm_sq_times<T: Scalar>(p: &Polynomial<T>, n: AmbientDim) -> Result<Polynomial<T>> {
    p.check_dim(n.0)?;
    Ok(&Polynomial::norm_sq(n.0) * p)
}
