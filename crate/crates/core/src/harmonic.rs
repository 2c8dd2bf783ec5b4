//! Harmonic decomposition, the `|X|^2`-adic expansion, the restriction
//! projection `L_a` onto harmonic polynomials, and reduction modulo the
//! sphere ideal `(|X|^2 - a^2)`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::{laplacian, norm_sq_times, AmbientDim};
use crate::pairing::SphereSpec;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::{pow, Scalar};

/// `p = p_0 + |X|^2 p_1 + ... + |X|^{2s} p_s` with every `p_i` harmonic.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicExpansion<T> {
    pub components: Vec<Polynomial<T>>,
    pub ambient: AmbientDim,
}

impl<T: Scalar> HarmonicExpansion<T> {
    pub fn reassemble(&self) -> Polynomial<T> {
        let r2 = Polynomial::norm_sq(self.ambient.get());
        self.components.iter().rev().fold(Polynomial::zero(), |acc, c| &(&acc * &r2) + c)
    }
}

/// `original = quotient * (|X|^2 - a^2) + remainder`, with the remainder of
/// degree at most one in `x_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereRemainder<T> {
    pub remainder: Polynomial<T>,
    pub quotient: Polynomial<T>,
    pub spec: SphereSpec<T>,
}

/// Splits `p = p0 + |X|^2 q` with `p0` harmonic.
///
/// Each homogeneous part of degree `d` is handled on its own: with `T` the
/// Laplacian and `T*` multiplication by `|X|^2` (its Hermite adjoint), solve
/// `T T* y = T p` over degree `d - 2` and take `q = y`, `p0 = p - T* y`.
/// `T T*` preserves the parity of every exponent, so the system is solved
/// one parity class at a time.
pub fn harmonic_decompose<T: Scalar>(p: &Polynomial<T>, n: AmbientDim) -> Result<(Polynomial<T>, Polynomial<T>)> {
    p.check_dim(n.get())?;
    let mut p0 = Polynomial::zero();
    let mut q = Polynomial::zero();
    for (d, part) in p.homogeneous_components() {
        let (h, y) = decompose_homogeneous(&part, d, n)?;
        p0 = &p0 + &h;
        q = &q + &y;
    }
    Ok((p0, q))
}

fn decompose_homogeneous<T: Scalar>(
    part: &Polynomial<T>,
    d: u32,
    n: AmbientDim,
) -> Result<(Polynomial<T>, Polynomial<T>)> {
    if d < 2 {
        return Ok((part.clone(), Polynomial::zero()));
    }
    let target = laplacian(part, n)?;
    if target.is_zero() {
        return Ok((part.clone(), Polynomial::zero()));
    }
    let mut classes: BTreeMap<Vec<u32>, Polynomial<T>> = BTreeMap::new();
    for (m, c) in target.terms() {
        classes.entry(m.parity_class()).or_default().add_term(m.clone(), c.clone());
    }
    let mut y = Polynomial::zero();
    for (odd_vars, rhs) in classes {
        let basis = parity_basis(n.get(), d - 2, &odd_vars);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut a = DenseMatrix::zeros(basis.len());
        for (col, b) in basis.iter().enumerate() {
            let image = laplacian(&norm_sq_times(&Polynomial::term(b.clone(), T::one()), n)?, n)?;
            for (m, c) in image.terms() {
                let row = index[m];
                a.set(row, col, c.clone());
            }
        }
        let b: Vec<T> = basis.iter().map(|m| rhs.coeff(m)).collect();
        let sol = a.solve(&b)?;
        y = &y + &Polynomial::from_terms(basis.into_iter().zip(sol));
    }
    let p0 = part - &norm_sq_times(&y, n)?;
    Ok((p0, y))
}

/// Monomials of degree `degree` in `x1..=x_nvars` whose odd exponents sit
/// exactly on `odd_vars`.
fn parity_basis(nvars: u32, degree: u32, odd_vars: &[u32]) -> Vec<Monomial> {
    let k = odd_vars.len() as u32;
    if k > degree || (degree - k) % 2 == 1 {
        return Vec::new();
    }
    let base = Monomial::from_pairs(odd_vars.iter().map(|&v| (v, 1)));
    monomials_of_degree(nvars, (degree - k) / 2)
        .into_iter()
        .map(|half| {
            let doubled = Monomial::from_pairs(half.iter().map(|(v, e)| (v, 2 * e)));
            doubled.mul(&base)
        })
        .collect()
}

/// Repeated harmonic decomposition of the quotient.
pub fn base_r2_expansion<T: Scalar>(p: &Polynomial<T>, n: AmbientDim) -> Result<HarmonicExpansion<T>> {
    p.check_dim(n.get())?;
    let mut components = Vec::new();
    let mut rest = p.clone();
    while !rest.is_zero() {
        let (h, q) = harmonic_decompose(&rest, n)?;
        components.push(h);
        rest = q;
    }
    Ok(HarmonicExpansion { components, ambient: n })
}

/// The harmonic polynomial agreeing with `p` on the sphere:
/// `p_0 + a^2 p_1 + a^4 p_2 + ...`.
pub fn la_project<T: Scalar>(p: &Polynomial<T>, s: &SphereSpec<T>) -> Result<Polynomial<T>> {
    p.check_dim(s.dim())?;
    if p.degree().unwrap_or(0) == 0 {
        return Ok(p.clone());
    }
    let n = AmbientDim::new(s.dim())?;
    let expansion = base_r2_expansion(p, n)?;
    Ok(expansion
        .components
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (i, c)| &acc + &c.scale(&pow(s.a2(), i as u32))))
}

/// Canonical remainder modulo `|X|^2 - a^2`: rewrites `x_N^2` as
/// `a^2 - x_1^2 - ... - x_{N-1}^2` until every term has `x_N`-degree at most
/// one. The remainder is zero exactly when `p` vanishes on the sphere.
pub fn reduce_mod_sphere<T: Scalar>(p: &Polynomial<T>, s: &SphereSpec<T>) -> Result<SphereRemainder<T>> {
    let n = s.dim();
    p.check_dim(n)?;
    // x_N^2 = a^2 - (x_1^2 + ... + x_{N-1}^2) on the sphere
    let replacement = &Polynomial::constant(s.a2().clone()) - &Polynomial::norm_sq(n - 1);
    let mut remainder = p.clone();
    let mut quotient = Polynomial::zero();
    loop {
        let reducible: Vec<(Monomial, T)> = remainder
            .terms()
            .filter(|(m, _)| m.exponent(n) >= 2)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        if reducible.is_empty() {
            break;
        }
        for (m, c) in reducible {
            let lowered = m.div_var(n, 2).expect("exponent checked above");
            remainder.add_term(m, -c.clone());
            quotient.add_term(lowered.clone(), c.clone());
            remainder = &remainder + &replacement.mul_monomial(&lowered).scale(&c);
        }
    }
    Ok(SphereRemainder { remainder, quotient, spec: s.clone() })
}

/// The unique member of `p + (|X|^2 - a^2)` involving only `x1..=x_nvars`,
/// for `nvars < N`.
pub fn minimal_representative<T: Scalar>(p: &Polynomial<T>, nvars: u32, s: &SphereSpec<T>) -> Result<Polynomial<T>> {
    if nvars >= s.dim() {
        return Err(Error::InvalidArgument(format!(
            "target variable count {nvars} must be below the ambient dimension {}",
            s.dim()
        )));
    }
    let r = reduce_mod_sphere(p, s)?.remainder;
    if r.max_var() > nvars {
        Err(Error::NoRepresentative(nvars))
    } else {
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::casimir;
    use crate::poly::parse_poly;
    use crate::Rational;

    fn p(text: &str) -> Polynomial<Rational> {
        parse_poly(text).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn dim(n: u32) -> AmbientDim {
        AmbientDim::new(n).unwrap()
    }

    fn r2(n: u32) -> Polynomial<Rational> {
        Polynomial::norm_sq(n)
    }

    #[test]
    fn decompose_x1_squared() {
        for n in 1..7u32 {
            let (h, y) = harmonic_decompose(&p("x1^2"), dim(n)).unwrap();
            let inv = q(1, i64::from(n));
            assert_eq!(h, &p("x1^2") - &r2(n).scale(&inv));
            assert_eq!(y, Polynomial::constant(inv));
        }
    }

    #[test]
    fn decompose_x1_cubed() {
        for n in 1..7u32 {
            let (h, y) = harmonic_decompose(&p("x1^3"), dim(n)).unwrap();
            let c = q(3, i64::from(n) + 2);
            assert_eq!(y, p("x1").scale(&c));
            assert_eq!(h, &p("x1^3") - &(&r2(n) * &p("x1")).scale(&c));
        }
    }

    #[test]
    fn decompose_already_harmonic() {
        let (h, y) = harmonic_decompose(&p("x1*x2"), dim(3)).unwrap();
        assert_eq!(h, p("x1*x2"));
        assert!(y.is_zero());
        let (h, y) = harmonic_decompose(&Polynomial::<Rational>::zero(), dim(3)).unwrap();
        assert!(h.is_zero() && y.is_zero());
    }

    #[test]
    fn expansion_examples() {
        let e = base_r2_expansion(&r2(4), dim(4)).unwrap();
        assert_eq!(e.components, vec![Polynomial::zero(), p("1")]);
        let e = base_r2_expansion(&p("x1^2"), dim(3)).unwrap();
        assert_eq!(e.components, vec![p("2/3*x1^2 - 1/3*x2^2 - 1/3*x3^2"), p("1/3")]);
        let e = base_r2_expansion(&p("x1*x2 - x3"), dim(3)).unwrap();
        assert_eq!(e.components, vec![p("x1*x2 - x3")]);
        assert!(base_r2_expansion(&Polynomial::<Rational>::zero(), dim(2)).unwrap().components.is_empty());
    }

    #[test]
    fn expansion_reassembles_and_is_harmonic() {
        let input = p("x1^6 - 2*x1^2*x2^3 + 5/7*x3^4*x1 + x2^2 - 3");
        for n in 3..6u32 {
            let e = base_r2_expansion(&input, dim(n)).unwrap();
            assert_eq!(e.reassemble(), input);
            assert!(e.components.len() <= 4);
            for c in &e.components {
                assert!(laplacian(c, dim(n)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn la_examples() {
        for n in 2..7u32 {
            for a2 in [q(1, 1), q(i64::from(n), 1), q(9, 4)] {
                let s = SphereSpec::new(n, a2.clone()).unwrap();
                assert_eq!(la_project(&r2(n), &s).unwrap(), Polynomial::constant(a2.clone()));
                let c = q(3, i64::from(n) + 2);
                let input = &p("x1^3") - &p("x1").scale(&(c.clone() * a2.clone()));
                let want = &p("x1^3") - &(&r2(n) * &p("x1")).scale(&c);
                assert_eq!(la_project(&input, &s).unwrap(), want);
                assert_eq!(la_project(&want, &s).unwrap(), want);
            }
        }
        let s = SphereSpec::new(3, q(2, 1)).unwrap();
        assert_eq!(la_project(&p("5/2"), &s).unwrap(), p("5/2"));
    }

    #[test]
    fn reduce_examples() {
        for n in 1..6u32 {
            let s = SphereSpec::new(n, q(7, 2)).unwrap();
            let g = &r2(n) - &Polynomial::constant(q(7, 2));
            let r = reduce_mod_sphere(&g, &s).unwrap();
            assert!(r.remainder.is_zero());
            assert_eq!(r.quotient, p("1"));
        }
        let s = SphereSpec::new(2, q(4, 1)).unwrap();
        let r = reduce_mod_sphere(&p("x2^2"), &s).unwrap();
        assert_eq!(r.remainder, p("4 - x1^2"));
        assert_eq!(r.quotient, p("1"));
    }

    #[test]
    fn reduce_reconstructs_input() {
        let s = SphereSpec::new(3, q(5, 3)).unwrap();
        let input = p("x3^5*x1 + x2^2*x3^4 - x3^3 + 2*x3^2 + x1");
        let r = reduce_mod_sphere(&input, &s).unwrap();
        let g = &r2(3) - &Polynomial::constant(q(5, 3));
        assert_eq!(&(&r.quotient * &g) + &r.remainder, input);
        assert!(r.remainder.degree_in(3) <= 1);
    }

    #[test]
    fn la_kernel_via_reduction() {
        let s = SphereSpec::new(4, q(3, 1)).unwrap();
        let input = p("x1^4*x2 - x3^3 + 2*x4^2*x1 + 7");
        let diff = &input - &la_project(&input, &s).unwrap();
        assert!(reduce_mod_sphere(&diff, &s).unwrap().remainder.is_zero());
    }

    #[test]
    fn minimal_representative_examples() {
        for n in 2..7u32 {
            let s = SphereSpec::<Rational>::sqrt_n(n).unwrap();
            let nn = i64::from(n);
            for m in 0..6u32 {
                let mi = i64::from(m);
                let xm = Polynomial::term(Monomial::var_pow(1, m), q(1, 1));
                let cas = casimir(&xm, dim(n)).unwrap();
                let mut want = xm.scale(&q(-mi * (nn - 1), 1));
                if m >= 2 {
                    let low = Polynomial::term(Monomial::var_pow(1, m - 2), q(1, 1));
                    want = &want + &(&(&Polynomial::constant(q(nn, 1)) - &p("x1^2")) * &low).scale(&q(mi * (mi - 1), 1));
                }
                assert_eq!(minimal_representative(&cas, 1, &s).unwrap(), want);
            }
        }
        let s = SphereSpec::new(4, q(1, 1)).unwrap();
        assert_eq!(minimal_representative(&p("x1*x2 + 3"), 2, &s).unwrap(), p("x1*x2 + 3"));
        assert_eq!(minimal_representative(&p("x4"), 1, &s), Err(Error::NoRepresentative(1)));
        assert!(minimal_representative(&p("x1"), 4, &s).is_err());
    }

    #[test]
    fn float_decomposition() {
        let f: Polynomial<f64> = parse_poly("x1^4 - x1*x2*x3^2").unwrap();
        let (h, y) = harmonic_decompose(&f, dim(4)).unwrap();
        assert!(laplacian(&h, dim(4)).unwrap().max_abs_coeff() < 1e-12);
        let back = &h + &norm_sq_times(&y, dim(4)).unwrap();
        assert!((&back - &f).max_abs_coeff() < 1e-12);
    }
}
