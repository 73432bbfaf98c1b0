//! Exact matrices and the subspace calculus on P^n.

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub(crate) use subspace::residue_rank;
pub use subspace::{
    intersect, meets, preimage_closure, project_from, random_invertible, span, stacked_rank,
    ProjSubspace,
};

#[cfg(test)]
mod tests;
