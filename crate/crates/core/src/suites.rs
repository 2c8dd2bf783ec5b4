//! Named verification suites: exact identities over seeded random
//! polynomials, and the Monte Carlo calibration run.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::harmonic::{base_r2_expansion, harmonic_decompose, la_project, reduce_mod_sphere};
use crate::montecarlo::run_builtin_suite;
use crate::operators::{apply_mjk, casimir, euler, laplacian, norm_sq_times, AmbientDim};
use crate::ortho::{gauss_projection_complement_in, zonal_harmonic, zonal_poly};
use crate::pairing::{adn_factor, gaussian_inner, sphere_inner, SphereSpec};
use crate::poly::{monomials_up_to, Polynomial};
use crate::random::RandomPolys;
use crate::scalar::Scalar;
use crate::sphere_laplacian::{hermite_operator, sphere_laplacian};
use crate::{QPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: Option<String>,
}

/// One random test input: a polynomial, its ambient dimension, and a sphere.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub poly: QPoly,
    pub n: AmbientDim,
    pub sphere: SphereSpec<Rational>,
}

/// `count` polynomials with `N` in `2..=6`, degree at most 6 and support
/// inside `x1..=xN`. The squared radius cycles through `1`, `N` and `3/2`.
pub fn random_cases(seed: u64, count: usize) -> Vec<SuiteCase> {
    let mut gen = RandomPolys::new(seed, 1, 6);
    (0..count)
        .map(|i| {
            let n = gen.range(2, 6);
            gen.nvars = n;
            let a2 = match i % 3 {
                0 => Rational::from_int(1),
                1 => Rational::from_int(i64::from(n)),
                _ => Rational::ratio(3, 2),
            };
            SuiteCase {
                poly: gen.poly(),
                n: AmbientDim::new(n).expect("n >= 2"),
                sphere: SphereSpec::new(n, a2).expect("valid sphere"),
            }
        })
        .collect()
}

struct Check {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failure: None }
    }

    fn record(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.checked += 1;
        if self.failure.is_some() {
            return;
        }
        match ok {
            Ok(true) => {}
            Ok(false) => self.failure = Some(format!("failed on {}", what())),
            Err(e) => self.failure = Some(format!("error on {}: {e}", what())),
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult { name: self.name.into(), passed: self.failure.is_none(), checked: self.checked, detail: self.failure }
    }
}

pub fn casimir_identity_holds(p: &QPoly, n: AmbientDim) -> Result<bool> {
    let lhs = norm_sq_times(&laplacian(p, n)?, n)?;
    let e = euler(p);
    let shift = Rational::from_int(i64::from(n.get()) - 2);
    let rhs = &(&euler(&e) + &e.scale(&shift)) + &casimir(p, n)?;
    Ok(lhs == rhs)
}

/// Every homogeneous part of the harmonic component satisfies
/// `casimir(h) = -m (m + N - 2) h`.
pub fn eigenrelation_holds(p: &QPoly, n: AmbientDim) -> Result<bool> {
    let (h, _) = harmonic_decompose(p, n)?;
    for (m, part) in h.homogeneous_components() {
        let eig = Rational::from_int(-i64::from(m) * (i64::from(m) + i64::from(n.get()) - 2));
        if casimir(&part, n)? != part.scale(&eig) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (j, k)))
}

/// `L_a` is idempotent, self-adjoint for the sphere pairing, commutes with
/// every `M_jk`, and kills exactly the multiples of `|X|^2 - a^2`.
pub fn la_structure_holds(p: &QPoly, other: &QPoly, s: &SphereSpec<Rational>) -> Result<bool> {
    let la = la_project(p, s)?;
    if la_project(&la, s)? != la {
        return Ok(false);
    }
    if !reduce_mod_sphere(&(p - &la), s)?.remainder.is_zero() {
        return Ok(false);
    }
    let vanishing = &(&Polynomial::norm_sq(s.dim()) - &Polynomial::constant(s.a2().clone())) * other;
    if !la_project(&vanishing, s)?.is_zero() {
        return Ok(false);
    }
    if sphere_inner(&la, other, s)? != sphere_inner(p, &la_project(other, s)?, s)? {
        return Ok(false);
    }
    for (j, k) in pairs(s.dim()) {
        if la_project(&apply_mjk(j, k, p)?, s)? != apply_mjk(j, k, &la)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rotation_23() -> BTreeMap<u32, QPoly> {
    let c = Rational::ratio(3, 5);
    let s = Rational::ratio(4, 5);
    let x2 = QPoly::var(2);
    let x3 = QPoly::var(3);
    BTreeMap::from([
        (2, &x2.scale(&c) + &x3.scale(&s)),
        (3, &x3.scale(&c) - &x2.scale(&s)),
    ])
}

/// `(a^2 - X^2) q'' - (N - 1) X q' + m (m + N - 2) q = 0` for the zonal
/// polynomial of degree `m`.
pub fn zonal_ode_holds(m: u32, s: &SphereSpec<Rational>) -> Result<bool> {
    let q = zonal_poly(m, s)?;
    let d1 = q.partial(1);
    let d2 = d1.partial(1);
    let x = QPoly::var(1);
    let weight = &QPoly::constant(s.a2().clone()) - &(&x * &x);
    let n = i64::from(s.dim());
    let mi = i64::from(m);
    let lhs = &(&(&weight * &d2) - &(&x * &d1).scale(&Rational::from_int(n - 1))) + &q.scale(&Rational::from_int(mi * (mi + n - 2)));
    Ok(lhs.is_zero())
}

pub fn zonal_rotation_invariant(m: u32, s: &SphereSpec<Rational>) -> Result<bool> {
    let z = zonal_harmonic(m, s)?;
    Ok(z.substitute_linear(&rotation_23())? == z)
}

/// `H P = P H` with `P = I - gauss_projection_complement` in two variables.
pub fn hermite_projection_commutes(p: &QPoly, d: u32) -> Result<bool> {
    let project = |q: &QPoly| -> Result<QPoly> { Ok(q - &gauss_projection_complement_in(q, 2, d)?) };
    Ok(hermite_operator(&project(p)?) == project(&hermite_operator(p))?)
}

/// `a^2 sphere_laplacian(p) - casimir(p)` vanishes on the sphere.
pub fn slap_certified(p: &QPoly, s: &SphereSpec<Rational>) -> Result<bool> {
    let n = AmbientDim::new(s.dim())?;
    let slap = sphere_laplacian(p, s)?.value;
    let diff = &slap.scale(s.a2()) - &casimir(p, n)?;
    Ok(reduce_mod_sphere(&diff, s)?.remainder.is_zero())
}

/// All exact identities over `cases` random inputs drawn from `seed`.
pub fn identities_suite(seed: u64, cases: usize) -> Vec<PropertyResult> {
    let suite = random_cases(seed, cases);
    let mut gen = RandomPolys::new(seed ^ 0x5eed, 3, 3);

    let mut c_identity = Check::new("casimir_identity");
    let mut c_commute = Check::new("laplacian_commutes_with_rotations");
    let mut c_r2 = Check::new("norm_sq_commutes_with_rotations");
    let mut c_anti = Check::new("rotation_antisymmetry");
    let mut c_eigen = Check::new("harmonic_eigenrelation");
    let mut c_decomp = Check::new("harmonic_decomposition");
    let mut c_la = Check::new("la_projection_structure");
    let mut c_slap = Check::new("sphere_laplacian_certified");
    for (i, case) in suite.iter().enumerate() {
        let (p, n, s) = (&case.poly, case.n, &case.sphere);
        let what = || format!("case {i}: N = {}, p = {p}", n.get());
        c_identity.record(casimir_identity_holds(p, n), what);
        c_commute.record(
            (|| {
                for (j, k) in pairs(n.get()) {
                    if laplacian(&apply_mjk(j, k, p)?, n)? != apply_mjk(j, k, &laplacian(p, n)?)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
            what,
        );
        c_r2.record(
            (|| {
                for (j, k) in pairs(n.get()) {
                    if norm_sq_times(&apply_mjk(j, k, p)?, n)? != apply_mjk(j, k, &norm_sq_times(p, n)?)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
            what,
        );
        c_anti.record(
            (|| {
                for (j, k) in pairs(n.get()) {
                    if apply_mjk(k, j, p)? != -apply_mjk(j, k, p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
            what,
        );
        c_eigen.record(eigenrelation_holds(p, n), what);
        c_decomp.record(
            (|| {
                let (h, q) = harmonic_decompose(p, n)?;
                let expansion = base_r2_expansion(p, n)?;
                Ok(laplacian(&h, n)?.is_zero()
                    && &h + &norm_sq_times(&q, n)? == *p
                    && expansion.reassemble() == *p)
            })(),
            what,
        );
        if i % 2 == 0 {
            gen.nvars = n.get();
            let other = gen.poly();
            c_la.record(la_structure_holds(p, &other, s), what);
        }
        c_slap.record(slap_certified(p, s), what);
    }

    let mut c_zonal = Check::new("zonal_ode_and_rotation_invariance");
    for n in 3..=8u32 {
        for a2 in [Rational::from_int(1), Rational::from_int(i64::from(n))] {
            let s = SphereSpec::new(n, a2).expect("valid sphere");
            for m in 0..=6 {
                c_zonal.record(
                    zonal_ode_holds(m, &s).and_then(|ok| Ok(ok && zonal_rotation_invariant(m, &s)?)),
                    || format!("m = {m}, N = {n}"),
                );
            }
        }
    }

    let mut c_chpi = Check::new("hermite_commutes_with_projection");
    for d in 1..=4 {
        for m in monomials_up_to(2, d) {
            let p = QPoly::term(m.clone(), Rational::from_int(1));
            c_chpi.record(hermite_projection_commutes(&p, d), || format!("d = {d}, p = {m}"));
        }
    }

    let mut c_adn = Check::new("gaussian_sphere_factor");
    for i in 0..cases.min(100) {
        let n = gen.range(2, 8);
        gen.nvars = n.min(4);
        let half = gen.range(0, 3);
        let split = gen.range(0, 2 * half);
        let f = QPoly::term(gen.monomial_of_degree(split), Rational::from_int(1));
        let g = QPoly::term(gen.monomial_of_degree(2 * half - split), Rational::from_int(1));
        c_adn.record(
            (|| {
                let s = SphereSpec::<Rational>::sqrt_n(n)?;
                Ok(gaussian_inner(&f, &g) == adn_factor::<Rational>(half, n) * sphere_inner(&f, &g, &s)?)
            })(),
            || format!("pair {i}: N = {n}, f = {f}, g = {g}"),
        );
    }

    vec![
        c_identity.finish(),
        c_commute.finish(),
        c_r2.finish(),
        c_anti.finish(),
        c_eigen.finish(),
        c_decomp.finish(),
        c_la.finish(),
        c_slap.finish(),
        c_zonal.finish(),
        c_chpi.finish(),
        c_adn.finish(),
    ]
}

/// Outcome of the Monte Carlo calibration: the suite passes when at least
/// `required` of its comparisons pass.
#[derive(Clone, Debug)]
pub struct McSuiteOutcome {
    pub reports: Vec<crate::montecarlo::McReport>,
    pub required: usize,
}

impl McSuiteOutcome {
    pub fn passed_count(&self) -> usize {
        self.reports.iter().filter(|r| r.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.passed_count() >= self.required
    }
}

pub fn mc_suite(samples: u64, seed: u64) -> Result<McSuiteOutcome> {
    let reports = run_builtin_suite(samples, seed, 5.0)?;
    let required = reports.len() - 1;
    Ok(McSuiteOutcome { reports, required })
}
