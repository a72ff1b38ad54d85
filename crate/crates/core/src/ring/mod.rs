//! Exact arithmetic in `k[Δ]`, graded pieces and homogeneous subalgebra
//! membership.

mod graded;
mod poly;
mod rewrite;

pub use graded::{
    check_finite_type, enumerate_graded_piece, positive_weights, subalgebra_membership,
    FiniteTypeReport, PieceDimension,
};
pub(crate) use graded::{degree_products, for_each_of_weight};
pub use poly::{Monomial, Polynomial};
pub use rewrite::{EliminationOrder, RewriteSystem, Rule};
