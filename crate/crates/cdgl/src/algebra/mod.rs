//! Canonical representation of elements of completed free graded Lie
//! algebras inside the truncated tensor algebra over the rationals, with
//! bracket, product, grading, and substitution morphisms.

mod context;
mod element;
mod morphism;

pub use context::{AlgebraContext, Generator, Word};
pub use element::Element;
pub use morphism::{validate_chain_morphism, ChainMapReport, Morphism};

pub(crate) use context::require_same_context;
