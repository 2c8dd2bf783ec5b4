//! Hermite, Gaussian and normalized spherical pairings on polynomials.
//!
//! All three reduce to closed forms on monomials. For a homogeneous
//! integrand of even degree `e` the spherical and Gaussian integrals differ
//! by the rational factor `a^e / (N (N+2) ... (N+e-2))`, so no Gamma values
//! are ever evaluated.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{pow, Scalar};

/// The sphere `S^{N-1}(a)` in `R^N`, carried by `a^2` so that radii such as
/// `sqrt(N)` stay rational.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereSpec<T> {
    dim: u32,
    a2: T,
}

impl<T: Scalar> SphereSpec<T> {
    pub fn new(dim: u32, a2: T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("sphere dimension must be at least 1".into()));
        }
        if !a2.is_positive() {
            return Err(Error::InvalidArgument(format!("squared radius must be positive, got {a2}")));
        }
        Ok(Self { dim, a2 })
    }

    /// The sphere of radius `sqrt(N)`.
    pub fn sqrt_n(dim: u32) -> Result<Self> {
        Self::new(dim, T::from_u64_lossy(u64::from(dim)))
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn a2(&self) -> &T {
        &self.a2
    }
}

/// `E[x^m]` under the standard Gaussian product measure:
/// `prod (j_i - 1)!!` when every exponent is even, else zero.
pub fn gaussian_moment<T: Scalar>(m: &Monomial) -> T {
    if !m.is_even() {
        return T::zero();
    }
    m.iter().fold(T::one(), |acc, (_, e)| acc * double_factorial::<T>(e.saturating_sub(1)))
}

fn double_factorial<T: Scalar>(n: u32) -> T {
    (1..=n).rev().step_by(2).fold(T::one(), |acc, k| acc * T::from_u64_lossy(u64::from(k)))
}

fn factorial<T: Scalar>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_u64_lossy(u64::from(k)))
}

pub fn gaussian_integral<T: Scalar>(p: &Polynomial<T>) -> T {
    p.terms().fold(T::zero(), |acc, (m, c)| acc + c.clone() * gaussian_moment::<T>(m))
}

/// Standard Gaussian `L^2` pairing. It does not depend on any ambient
/// dimension.
pub fn gaussian_inner<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>) -> T {
    gaussian_integral(&(p * q))
}

/// Monomials are orthogonal with `<x^j, x^j>_h = j_1! j_2! ...`.
pub fn hermite_inner<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>) -> T {
    let (small, large) = if p.num_terms() <= q.num_terms() { (p, q) } else { (q, p) };
    small.terms().fold(T::zero(), |acc, (m, c)| {
        let other = large.coeff(m);
        if other.is_zero() {
            acc
        } else {
            let weight = m.iter().fold(T::one(), |w, (_, e)| w * factorial::<T>(e));
            acc + c.clone() * other * weight
        }
    })
}

/// `N (N+2) ... (N+d-2)` for even `d`, which equals
/// `2^{d/2} Gamma((N+d)/2) / Gamma(N/2)`.
pub fn degree_factor<T: Scalar>(d: u32, n: u32) -> Result<T> {
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    Ok((0..d / 2).fold(T::one(), |acc, i| acc * T::from_u64_lossy(u64::from(n) + 2 * u64::from(i))))
}

/// `prod_{j=1}^{d} (1 + 2(j-1)/N)`, the ratio between the Gaussian pairing
/// and the pairing on the sphere of radius `sqrt(N)` in total degree `2d`.
pub fn adn_factor<T: Scalar>(d: u32, n: u32) -> T {
    let n_t = T::from_u64_lossy(u64::from(n));
    (1..=d).fold(T::one(), |acc, j| {
        acc * (T::one() + T::from_u64_lossy(2 * u64::from(j - 1)) / n_t.clone())
    })
}

/// Integral of `p` against the normalized uniform measure on the sphere.
pub fn sphere_integral<T: Scalar>(p: &Polynomial<T>, s: &SphereSpec<T>) -> Result<T> {
    p.check_dim(s.dim)?;
    let mut total = T::zero();
    for (e, part) in p.homogeneous_components() {
        if e % 2 == 1 {
            continue;
        }
        let gauss = gaussian_integral(&part);
        if gauss.is_zero() {
            continue;
        }
        let scale = pow(&s.a2, e / 2) / degree_factor::<T>(e, s.dim)?;
        total = total + gauss * scale;
    }
    Ok(total)
}

pub fn sphere_inner<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>, s: &SphereSpec<T>) -> Result<T> {
    sphere_integral(&(p * q), s)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Pairing<T> {
    Gaussian,
    Hermite,
    Sphere(SphereSpec<T>),
}

impl<T: Scalar> Pairing<T> {
    pub fn inner(&self, p: &Polynomial<T>, q: &Polynomial<T>) -> Result<T> {
        match self {
            Pairing::Gaussian => Ok(gaussian_inner(p, q)),
            Pairing::Hermite => Ok(hermite_inner(p, q)),
            Pairing::Sphere(s) => sphere_inner(p, q, s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<T> {
    pub basis: Vec<Polynomial<T>>,
    pub entries: DenseMatrix<T>,
}

impl<T: Scalar> GramMatrix<T> {
    /// Coefficients `c` with `sum_i c_i basis[i]` the orthogonal projection
    /// of `p` onto the span of the basis.
    pub fn project_coefficients(&self, p: &Polynomial<T>, pairing: &Pairing<T>) -> Result<Vec<T>> {
        let rhs = self.basis.iter().map(|b| pairing.inner(b, p)).collect::<Result<Vec<_>>>()?;
        self.entries.solve(&rhs)
    }
}

/// Assembles `entries[i][j] = pairing(basis[i], basis[j])`. Rows are filled
/// in parallel; the result does not depend on scheduling.
pub fn gram_matrix<T: Scalar>(basis: Vec<Polynomial<T>>, pairing: &Pairing<T>) -> Result<GramMatrix<T>> {
    let n = basis.len();
    let upper: Vec<Vec<T>> = (0..n)
        .into_par_iter()
        .map(|i| (i..n).map(|j| pairing.inner(&basis[i], &basis[j])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut entries = DenseMatrix::zeros(n);
    for (i, row) in upper.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            entries.set(j, i, v.clone());
            entries.set(i, j, v);
        }
    }
    Ok(GramMatrix { basis, entries })
}
