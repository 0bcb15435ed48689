//! Exact arithmetic for the three-term recurrence `u_r = p u_{r-1} - q u_{r-2}`.
//!
//! The crate computes the Lucas-type pair `u_n`, `w_n = sigma^n + tau^n`,
//! generalized (Fibonomial-style) binomial coefficients, and the
//! characteristic polynomial `Phi_n(p, q, x)` of the n-th powers `u_r^n`, and
//! verifies the identities forced by `Phi_n` splitting over `Q(sqrt(p^2 - 4q))`.
//! Nothing here uses floating point.
//!
//! Modules, bottom up:
//!
//! * [`numeric`]: rational helpers, squarefree decomposition.
//! * [`quadfield`]: `Q(sqrt d)` arithmetic and the roots `sigma`, `tau`.
//! * [`sequences`]: `u_n`, `w_n` by iteration, closed form and doubling.
//! * [`binomials`]: Gaussian binomials, cyclotomic polynomials, `(r|k)_u`.
//! * [`charpoly`]: `Phi_n`, its quadratic factors, Galois classification.
//! * [`identities`]: identity checks and the grid runner.

pub mod binomials;
pub mod charpoly;
pub mod error;
pub mod identities;
pub mod numeric;
pub mod quadfield;
pub mod sequences;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use binomials::{
    bivariate_f, binomial_quotient, cyclotomic_poly, gaussian_binomial,
    gaussian_cyclotomic_factorization, generalized_binomial, CyclotomicFactor, HomogeneousBiPoly,
    UniPoly,
};
pub use charpoly::{
    classify_galois, fibonacci_factorization, phi_coeff_formula, phi_product, quadratic_factor,
    GaloisClassification, GaloisGroup, RationalPoly,
};
pub use error::{Error, Result};
pub use identities::{run_grid, GridSpec, IdentityId, IdentityReport, Status, ValueRange};
pub use numeric::{is_rational_square, parse_rational, squarefree_decompose, SquarefreeDecomposition};
pub use quadfield::{make_roots, QuadContext, QuadExt};
pub use sequences::{fast_pair, u_binet, u_iter, w_binet, w_iter, RecurrenceParams, SequenceTable};
