//! Floating-point Monte Carlo estimates of normalized sphere integrals.
//!
//! Points are standard Gaussian vectors scaled to radius `a`. Sampling is
//! split into fixed chunks of [`CHUNK`] points; chunk `i` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so the result depends only
//! on `(seed, samples)` and never on the thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pairing::{sphere_inner, SphereSpec};
use crate::poly::{parse_poly, Polynomial};
use crate::scalar::Scalar;
use crate::Rational;

pub const CHUNK: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub seed: u64,
}

fn chunk_points(n: u32, radius: f64, seed: u64, chunk: u64, count: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    (0..count)
        .map(|_| loop {
            let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                // dividing first keeps N = 1 exact: x / |x| is exactly +-1
                x.iter_mut().for_each(|v| *v = *v / norm * radius);
                break x;
            }
        })
        .collect()
}

fn chunk_sizes(count: u64) -> impl Iterator<Item = (u64, u64)> {
    let full = count / CHUNK;
    let tail = count % CHUNK;
    (0..full).map(|i| (i, CHUNK)).chain((tail > 0).then_some((full, tail)))
}

/// `count` points uniformly distributed on the sphere of radius `a` in `R^n`.
pub fn sample_sphere(n: u32, a: f64, seed: u64, count: u64) -> Result<impl Iterator<Item = Vec<f64>>> {
    if n == 0 || !(a > 0.0) || count == 0 {
        return Err(Error::InvalidArgument("sampling needs N >= 1, a > 0 and count >= 1".into()));
    }
    Ok(chunk_sizes(count).flat_map(move |(i, c)| chunk_points(n, a, seed, i, c)))
}

/// Running `(count, mean, sum of squared deviations)`.
#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn of(values: &[f64]) -> Self {
        let count = values.len() as f64;
        let mean = values.iter().sum::<f64>() / count;
        let m2 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        Self { count, mean, m2 }
    }

    fn merge(self, other: Self) -> Self {
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Sample mean and standard error of `p` over the sphere `s`.
pub fn mc_sphere_integral<T: Scalar>(p: &Polynomial<T>, s: &SphereSpec<T>, samples: u64, seed: u64) -> Result<McEstimate> {
    p.check_dim(s.dim())?;
    let radius = s.a2().to_f64().filter(|v| *v > 0.0).ok_or_else(|| Error::InvalidArgument("radius not representable".into()))?.sqrt();
    let pf: Polynomial<f64> = p.map_coeffs(|c| c.to_f64().unwrap_or(f64::NAN));
    let n = s.dim();
    let chunks: Vec<(u64, u64)> = chunk_sizes(samples).collect();
    if chunks.is_empty() {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let parts = chunks
        .par_iter()
        .map(|&(i, c)| {
            let values = chunk_points(n, radius, seed, i, c)
                .iter()
                .map(|x| pf.evaluate_dense(x))
                .collect::<Result<Vec<f64>>>()?;
            Ok(Moments::of(&values))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = parts.into_iter().reduce(Moments::merge).expect("at least one chunk");
    let standard_error = if samples > 1 { (total.m2 / (total.count - 1.0) / total.count).sqrt() } else { 0.0 };
    Ok(McEstimate { mean: total.mean, standard_error, samples, seed })
}

#[derive(Clone, Debug, PartialEq)]
pub struct McReport {
    pub p: String,
    pub q: String,
    pub dim: u32,
    pub a2: String,
    pub exact: String,
    pub exact_f64: f64,
    pub estimate: McEstimate,
    pub z: f64,
    pub passed: bool,
}

impl McReport {
    pub fn discrepancy(&self) -> f64 {
        (self.estimate.mean - self.exact_f64).abs()
    }
}

/// Compares the estimate of `p q` with the exact pairing; passes iff
/// `|mean - exact| <= z * standard_error`.
pub fn mc_check<T: Scalar>(
    p: &Polynomial<T>,
    q: &Polynomial<T>,
    s: &SphereSpec<T>,
    samples: u64,
    seed: u64,
    z: f64,
) -> Result<McReport> {
    let exact = sphere_inner(p, q, s)?;
    let exact_f64 = exact.to_f64().unwrap_or(f64::NAN);
    let estimate = mc_sphere_integral(&(p * q), s, samples, seed)?;
    let passed = (estimate.mean - exact_f64).abs() <= z * estimate.standard_error;
    Ok(McReport {
        p: p.to_string(),
        q: q.to_string(),
        dim: s.dim(),
        a2: s.a2().to_string(),
        exact: exact.to_string(),
        exact_f64,
        estimate,
        z,
        passed,
    })
}

/// One comparison of the built-in calibration suite.
#[derive(Clone, Debug)]
pub struct McCase {
    pub p: Polynomial<Rational>,
    pub q: Polynomial<Rational>,
    pub sphere: SphereSpec<Rational>,
}

/// Twenty pairs mixing dimensions, radii, parities and degrees. Apart from
/// `(1, 1)` none is constant on its sphere, so every standard error is
/// positive.
pub fn builtin_suite() -> Vec<McCase> {
    let cases: [(&str, &str, u32, (i64, i64)); 20] = [
        ("1", "1", 3, (1, 1)),
        ("x1", "x1", 5, (5, 1)),
        ("x1", "x2", 5, (5, 1)),
        ("x1^2", "x1^2", 8, (8, 1)),
        ("x1^2", "1", 10, (10, 1)),
        ("x1^2", "x2^2", 4, (2, 1)),
        ("x1^3", "x1", 6, (3, 1)),
        ("x1*x2", "x1*x2", 3, (1, 1)),
        ("x1^2 - x2^2", "x1^2", 4, (4, 1)),
        ("x1^4", "1", 7, (7, 1)),
        ("x1^3 - 3/5*x1", "x1^3", 5, (1, 1)),
        ("x1^2*x2", "x2", 6, (6, 1)),
        ("x1 + x2 + x3", "x1 - x3", 4, (9, 4)),
        ("x1^2*x2^2", "1", 12, (12, 1)),
        ("x1^6", "1", 20, (20, 1)),
        ("x1*x2*x3", "x1*x2*x3", 5, (2, 1)),
        ("x1^2 + 2*x1*x2", "x2^2 - 1/2", 3, (3, 1)),
        ("x2^4 - x1^2", "x1^2", 9, (3, 2)),
        ("x1^5", "x1", 30, (30, 1)),
        ("x1^2*x3", "x3 + x1", 50, (50, 1)),
    ];
    cases
        .iter()
        .map(|&(p, q, n, (num, den))| McCase {
            p: parse_poly(p).expect("suite polynomial parses"),
            q: parse_poly(q).expect("suite polynomial parses"),
            sphere: SphereSpec::new(n, Rational::ratio(num, den)).expect("suite sphere is valid"),
        })
        .collect()
}

/// Runs [`mc_check`] on every case of [`builtin_suite`].
pub fn run_builtin_suite(samples: u64, seed: u64, z: f64) -> Result<Vec<McReport>> {
    builtin_suite().iter().map(|c| mc_check(&c.p, &c.q, &c.sphere, samples, seed, z)).collect()
}
