//! Shared fixtures for the benchmark targets.

use rht_core::bounds::{BoundQuery, Case};
use rht_core::halperin::AlgebraPresentation;
use rht_core::SullivanAlgebra;

pub fn w6() -> SullivanAlgebra {
    rht_core::catalog::w6()
}

pub fn quadric_presentation() -> AlgebraPresentation {
    AlgebraPresentation::from_strings(&[("u", 2), ("a", 6)], &["a^2 + u^6", "a*u"]).unwrap()
}

pub fn sphere_query() -> BoundQuery {
    BoundQuery::new(120, 5, Case::Sphere).unwrap()
}
