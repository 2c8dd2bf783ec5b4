//! Seeded generator of small random polynomials with rational coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, Polynomial};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct RandomPolys {
    rng: ChaCha8Rng,
    pub nvars: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    /// Numerators are drawn from `-coeff_bound..=coeff_bound` and
    /// denominators from `1..=coeff_bound`.
    pub coeff_bound: i64,
}

impl RandomPolys {
    pub fn new(seed: u64, nvars: u32, max_degree: u32) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), nvars, max_degree, max_terms: 5, coeff_bound: 6 }
    }

    pub fn coefficient(&mut self) -> Rational {
        let b = self.coeff_bound;
        loop {
            let num = self.rng.random_range(-b..=b);
            if num != 0 {
                return Rational::new(num.into(), self.rng.random_range(1..=b).into());
            }
        }
    }

    pub fn monomial_of_degree(&mut self, degree: u32) -> Monomial {
        let mut exps = vec![0u32; self.nvars as usize];
        for _ in 0..degree {
            exps[self.rng.random_range(0..self.nvars as usize)] += 1;
        }
        Monomial::from_dense(&exps)
    }

    pub fn monomial(&mut self) -> Monomial {
        let d = self.rng.random_range(0..=self.max_degree);
        self.monomial_of_degree(d)
    }

    /// A nonzero polynomial with at most `max_terms` terms.
    pub fn poly(&mut self) -> Polynomial<Rational> {
        loop {
            let terms = self.rng.random_range(1..=self.max_terms);
            let mut p = Polynomial::zero();
            for _ in 0..terms {
                let m = self.monomial();
                let c = self.coefficient();
                p.add_term(m, c);
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A nonzero homogeneous polynomial of the given degree.
    pub fn homogeneous(&mut self, degree: u32) -> Polynomial<Rational> {
        loop {
            let terms = self.rng.random_range(1..=self.max_terms);
            let mut p = Polynomial::zero();
            for _ in 0..terms {
                let m = self.monomial_of_degree(degree);
                let c = self.coefficient();
                p.add_term(m, c);
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.random_range(lo..=hi)
    }
}
