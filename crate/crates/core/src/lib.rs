//! Exact-arithmetic computational toolkit for finite Sullivan algebras:
//! graded-commutative polynomial arithmetic over the rationals, per-degree
//! cohomology, Groebner-basis ideal computations, derivation-space checks
//! for fibration degeneration, relative models of fibrations, and exhaustive
//! Euler-characteristic optimization under degree constraints.

pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod fibrations;
pub mod halperin;
pub mod ideals;
pub mod invariants;
pub mod linalg;
pub mod sullivan;
pub mod verify;

pub use algebra::{basis_monomials, parse_polynomial, FreeAlgebra, Generator, Monomial, Polynomial};
pub use error::{Error, Result};
pub use sullivan::{BettiVector, DgaMorphism, ModelFile, SullivanAlgebra};
