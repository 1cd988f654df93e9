//! Exact arithmetic in completed free graded differential Lie algebras,
//! truncated by word length.
//!
//! The crate computes with sparse rational combinations of tensor words over
//! an alphabet of graded generators. On top of that representation it builds:
//!
//! - the Baker-Campbell-Hausdorff product `x * y = log(e^x e^y)` on degree-0
//!   elements and a group product `•` on degree-1 elements with
//!   `d(x • y) = dx * dy` ([`bch`]);
//! - graded derivations, differentials, the scaled section `theta_tilde` of
//!   the differential in the universal contractible algebras, perturbed
//!   differentials at Maurer-Cartan elements, and an exactness checker
//!   ([`differential`]);
//! - exponentials, logarithms, operator series in `ad`, and the exact
//!   coefficient sequences (Bernoulli and friends) driving them ([`series`]);
//! - the degree-2 correctors `sigma` and `tau` that control conjugation in
//!   the `•` group, with closed formulas for multiplying by cycles
//!   ([`correctors`]);
//! - builders and verifiers for the Lie models of the simplices in
//!   dimensions 0 through 4 ([`simplex`]);
//! - an expression parser, canonical formatter, JSON serialization, and the
//!   `cdgl` command-line interface ([`frontend`]).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! all operations agree with the untruncated ones below the truncation
//! order. See the `examples/` directory for one runnable program per
//! capability.
//!
//! ```
//! use cdgl::differential::UniversalAlgebra;
//! use cdgl::{bch, frac};
//!
//! // the free differential algebra on two degree-1 generators u1, u2
//! // with boundaries v1, v2, truncated at word length 4
//! let alg = UniversalAlgebra::new(2, 4)?;
//! let d = alg.differential();
//!
//! // the product on degree-1 elements integrates the BCH product
//! let product = bch::bullet(d, &alg.u(1), &alg.u(2))?;
//! assert_eq!(
//!     d.apply(&product)?,
//!     bch::bch(&alg.v(1), &alg.v(2))?,
//! );
//!
//! // its quadratic part is [u1, v2]/4 + [v1, u2]/4
//! let quadratic = &alg.u(1).bracket(&alg.v(2))?.scale(&frac(1, 4))
//!     + &alg.v(1).bracket(&alg.u(2))?.scale(&frac(1, 4));
//! assert_eq!(product.component(2)?, quadratic);
//! # Ok::<(), cdgl::Error>(())
//! ```

pub mod algebra;
pub mod bch;
pub mod correctors;
pub mod differential;
pub mod error;
pub mod frontend;
pub mod sampling;
pub mod series;
pub mod simplex;

pub use algebra::{
    validate_chain_morphism, AlgebraContext, ChainMapReport, Element, Generator, Morphism, Word,
};
pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for building a reduced rational from machine integers.
pub fn frac(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "zero denominator");
    Rat::new(numer.into(), denom.into())
}
