//! Plücker coordinates, Schubert incidence, subspace enumeration over
//! GF(q), and the Cayley-Bacharach tester.

mod cayley_bacharach;
mod enumerate;
mod plucker;
mod schubert;

pub use cayley_bacharach::{
    cayley_bacharach_test, evaluate_form, monomial_count, CbReport, Term, DEFAULT_MONOMIAL_BUDGET,
};
pub use enumerate::{
    enumerate_subspaces, pivot_patterns, plan_enumeration, points_of, subspace_count, PatternStream,
    PivotPattern, DEFAULT_BUDGET,
};
pub use plucker::{check_plucker_relations, plane_from_plucker, plucker, GrassmannPointSet, PluckerPoint};
pub use schubert::{schubert_sigma1_contains, sigma1_determinant, sigma1_linear_form};
