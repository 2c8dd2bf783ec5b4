//! The spherical Laplacian on polynomials in fewer variables than the
//! ambient dimension, and its large-N comparison with the Hermite operator.

use crate::error::Result;
use crate::operators::{casimir, AmbientDim};
use crate::pairing::SphereSpec;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SlapResult<T> {
    pub value: Polynomial<T>,
    pub ambient: AmbientDim,
    pub spec: SphereSpec<T>,
}

/// `Casimir / a^2` reduced modulo the sphere ideal to the variables of `p`.
///
/// Works monomial by monomial. A single power reduces to
/// `[-m(N-1) x^m + m(m-1)(a^2 - x^2) x^{m-2}] / a^2`, and a product of
/// homogeneous factors in disjoint variables obeys
/// `D(fg) = D(f) g - 2 d_f d_g / a^2 fg + f D(g)`.
/// When `p` already reaches `x_N` there is nothing to reduce and the
/// Casimir is divided by `a^2` directly.
pub fn sphere_laplacian<T: Scalar>(p: &Polynomial<T>, s: &SphereSpec<T>) -> Result<SlapResult<T>> {
    let n = s.dim();
    p.check_dim(n)?;
    let ambient = AmbientDim::new(n)?;
    let value = if p.max_var() == n {
        casimir(p, ambient)?.scale(&(T::one() / s.a2().clone()))
    } else {
        let mut acc = Polynomial::zero();
        for (m, c) in p.terms() {
            acc = &acc + &monomial_slap(m, s).scale(c);
        }
        acc
    };
    Ok(SlapResult { value, ambient, spec: s.clone() })
}

fn monomial_slap<T: Scalar>(m: &Monomial, s: &SphereSpec<T>) -> Polynomial<T> {
    let Some(((var, exp), rest)) = m.split_last() else {
        return Polynomial::zero();
    };
    let power = Polynomial::term(Monomial::var_pow(var, exp), T::one());
    let power_slap = power_slap(var, exp, s);
    if rest.is_one() {
        return power_slap;
    }
    let rest_poly = Polynomial::term(rest.clone(), T::one());
    let rest_slap = monomial_slap(&rest, s);
    let cross = T::from_u64_lossy(2 * u64::from(exp) * u64::from(rest.degree())) / s.a2().clone();
    let whole = Polynomial::term(m.clone(), T::one());
    &(&(&power_slap * &rest_poly) - &whole.scale(&cross)) + &(&power * &rest_slap)
}

fn power_slap<T: Scalar>(var: u32, m: u32, s: &SphereSpec<T>) -> Polynomial<T> {
    let a2 = s.a2().clone();
    let n = T::from_u64_lossy(u64::from(s.dim()));
    let mt = T::from_u64_lossy(u64::from(m));
    let mut out = Polynomial::term(Monomial::var_pow(var, m), -(mt.clone() * (n - T::one())) / a2.clone());
    if m >= 2 {
        let k = mt.clone() * (mt - T::one());
        out.add_term(Monomial::var_pow(var, m - 2), k.clone());
        out.add_term(Monomial::var_pow(var, m), -k / a2);
    }
    out
}

/// `sum_j (d^2/dx_j^2 - x_j d/dx_j)` over the support of `p`.
pub fn hermite_operator<T: Scalar>(p: &Polynomial<T>) -> Polynomial<T> {
    let mut acc = Polynomial::zero();
    for j in p.vars() {
        let d = p.partial(j);
        acc = &acc + &d.partial(j);
        acc = &acc - &(&Polynomial::var(j) * &d);
    }
    acc
}

/// Max-coefficient distance between the Laplacian of the sphere of radius
/// `sqrt(N)` and the Hermite operator, applied to `p`.
pub fn slap_limit_error<T: Scalar>(p: &Polynomial<T>, n: AmbientDim) -> Result<T> {
    let s = SphereSpec::sqrt_n(n.get())?;
    let slap = sphere_laplacian(p, &s)?.value;
    Ok((&slap - &hermite_operator(p)).max_abs_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::reduce_mod_sphere;
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

    fn certify(input: &Polynomial<Rational>, s: &SphereSpec<Rational>) {
        let slap = sphere_laplacian(input, s).unwrap().value;
        let cas = casimir(input, dim(s.dim())).unwrap();
        let diff = &cas - &slap.scale(s.a2());
        assert!(reduce_mod_sphere(&diff, s).unwrap().remainder.is_zero(), "{input:?}");
        assert!(slap.max_var() <= input.max_var().max(1));
    }

    #[test]
    fn powers_on_sqrt_n_sphere() {
        for n in 3..9u32 {
            let s = SphereSpec::sqrt_n(n).unwrap();
            let nn = i64::from(n);
            for m in 0..7u32 {
                let mi = i64::from(m);
                let xm = Polynomial::term(Monomial::var_pow(1, m), q(1, 1));
                let mut want = xm.scale(&(q(-mi, 1) * (q(1, 1) - q(1, nn))));
                if m >= 2 {
                    let low = Polynomial::term(Monomial::var_pow(1, m - 2), q(1, 1));
                    want = &want + &(&(&p("1") - &p("x1^2").scale(&q(1, nn))) * &low).scale(&q(mi * (mi - 1), 1));
                }
                assert_eq!(sphere_laplacian(&xm, &s).unwrap().value, want);
            }
        }
    }

    #[test]
    fn product_examples() {
        for n in 3..8u32 {
            for a2 in [q(1, 1), q(5, 2), q(i64::from(n), 1)] {
                let s = SphereSpec::new(n, a2.clone()).unwrap();
                let got = sphere_laplacian(&p("x1*x2"), &s).unwrap().value;
                assert_eq!(got, p("x1*x2").scale(&(q(-2 * i64::from(n), 1) / a2.clone())));
                certify(&p("x1*x2"), &s);
                certify(&p("x1^2*x2^3 - x2*x1"), &s);
            }
        }
        let s = SphereSpec::new(4, q(3, 1)).unwrap();
        assert!(sphere_laplacian(&p("5"), &s).unwrap().value.is_zero());
    }

    #[test]
    fn full_support_falls_back_to_casimir() {
        let s = SphereSpec::new(2, q(2, 1)).unwrap();
        let got = sphere_laplacian(&p("x1*x2"), &s).unwrap().value;
        assert_eq!(got, casimir(&p("x1*x2"), dim(2)).unwrap().scale(&q(1, 2)));
        assert!(sphere_laplacian(&p("x3"), &s).is_err());
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_operator(&p("x1^2")), p("2 - 2*x1^2"));
        assert_eq!(hermite_operator(&p("x1^3 - 3*x1")), p("x1^3 - 3*x1").scale(&q(-3, 1)));
        assert_eq!(hermite_operator(&p("x1*x2")), p("-2*x1*x2"));
    }

    #[test]
    fn limit_error_examples() {
        for n in [3u32, 10, 100, 1000] {
            assert_eq!(slap_limit_error(&p("x1"), dim(n)).unwrap(), q(1, i64::from(n)));
            assert_eq!(slap_limit_error(&p("4"), dim(n)).unwrap(), q(0, 1));
        }
        // the x1^2 terms cancel exactly: -2(1 - 1/N) x1^2 - 2 x1^2 / N = -2 x1^2
        assert_eq!(slap_limit_error(&p("x1^2"), dim(100)).unwrap(), q(0, 1));
    }
}
