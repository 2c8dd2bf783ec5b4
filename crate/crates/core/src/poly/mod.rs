//! Sparse multivariate polynomials over a [`Scalar`] field.

mod monomial;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use monomial::{monomials_of_degree, monomials_up_to, Monomial};
pub use parse::{format_poly, parse_poly, parse_poly_with, ParseError, ParseOptions, DEFAULT_MAX_EXPONENT};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T> Default for Polynomial<T> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(index: u32) -> Self {
        Self::term(Monomial::var(index), T::one())
    }

    pub fn term(m: Monomial, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// `x1^2 + ... + xn^2`.
    pub fn norm_sq(nvars: u32) -> Self {
        Self::from_terms((1..=nvars).map(|i| (Monomial::var_pow(i, 2), T::one())))
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest variable index in the support, 0 if there is none.
    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect()
    }

    pub fn degree_in(&self, index: u32) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Formal partial derivative in `x_index`.
    pub fn partial(&self, index: u32) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            m.derivative(index)
                .map(|(e, lowered)| (lowered, c.clone() * T::from_u64_lossy(u64::from(e))))
        }))
    }

    /// Splits into homogeneous parts keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().terms.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Simultaneous substitution `x_i -> rows[i]`; variables without a row
    /// are left alone. Every row must have degree at most one.
    pub fn substitute_linear(&self, rows: &BTreeMap<u32, Self>) -> Result<Self> {
        for (&v, row) in rows {
            if row.degree().unwrap_or(0) > 1 {
                return Err(Error::NonLinearSubstitution(v));
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for (v, e) in m.iter() {
                let factor = match rows.get(&v) {
                    Some(row) => row.pow(e),
                    None => Self::term(Monomial::var_pow(v, e), T::one()),
                };
                prod = &prod * &factor;
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Evaluates at a point given as a variable-to-value map.
    pub fn evaluate(&self, point: &BTreeMap<u32, T>) -> Result<T> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(&v).ok_or(Error::MissingVariable(v))?;
                t = t * crate::scalar::pow(x, e);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Evaluates at a dense point, `point[0]` being x1.
    pub fn evaluate_dense(&self, point: &[T]) -> Result<T> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(v as usize - 1).ok_or(Error::MissingVariable(v))?;
                t = t * crate::scalar::pow(x, e);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn map_coeffs<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> Polynomial<U> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> T {
        self.terms.values().map(|c| c.abs()).fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Errors when the support reaches past `x_dim`.
    pub fn check_dim(&self, dim: u32) -> Result<()> {
        let index = self.max_var();
        if index > dim {
            Err(Error::VariableOutOfRange { index, dim })
        } else {
            Ok(())
        }
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $method(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Polynomial(")?;
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})*{m}")?;
        }
        f.write_str(")")
    }
}
