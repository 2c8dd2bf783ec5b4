//! Exact polynomial algebra on spheres `S^{N-1}(a)` and the Gaussian limit
//! as `N -> infinity` with `a^2 = N`.
//!
//! Everything is generic over [`Scalar`]: [`Rational`] gives exact results,
//! `f64`/`f32` give fast approximations of the same computations.

pub mod error;
pub mod harmonic;
pub mod linalg;
pub mod montecarlo;
pub mod operators;
pub mod ortho;
pub mod pairing;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod sphere_laplacian;
pub mod suites;

pub use error::{Error, Result};
pub use num_traits;
pub use harmonic::{
    base_r2_expansion, harmonic_decompose, la_project, minimal_representative, reduce_mod_sphere, HarmonicExpansion,
    SphereRemainder,
};
pub use montecarlo::{mc_check, mc_sphere_integral, sample_sphere, McEstimate, McReport};
pub use operators::{apply_mjk, casimir, euler, laplacian, norm_sq_times, AmbientDim};
pub use ortho::{
    gauss_projection_complement, gauss_projection_complement_in, gegenbauer_monic, hermite_poly, limit_table,
    sphere_projection_complement, zonal_harmonic, zonal_poly, LimitKind, LimitRow, LimitTable, OrthogonalFamily,
};
pub use pairing::{
    adn_factor, degree_factor, gaussian_inner, gaussian_integral, gaussian_moment, gram_matrix, hermite_inner,
    sphere_integral, sphere_inner, GramMatrix, Pairing, SphereSpec,
};
pub use poly::{format_poly, parse_poly, Monomial, ParseError, Polynomial};
pub use scalar::{parse_rational, Scalar};
pub use sphere_laplacian::{hermite_operator, slap_limit_error, sphere_laplacian, SlapResult};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Polynomial with exact rational coefficients.
pub type QPoly = Polynomial<Rational>;
/// Polynomial with `f64` coefficients.
pub type FPoly = Polynomial<f64>;
/// Sphere with an exact squared radius.
pub type QSphere = SphereSpec<Rational>;
