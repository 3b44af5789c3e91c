//! Dehn fillings of the three-cusped chain-link complement N: exact slopes, manifold
//! descriptions with canonical forms, the filling classifier, its symmetries, homology,
//! cusp geometry and exceptional-slope analysis.

pub mod classify;
pub mod cusp;
pub mod exceptional;
pub mod homology;
pub mod manifold;
pub mod slope;
pub mod symmetry;
