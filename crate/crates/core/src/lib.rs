//! Exact lift-and-project toolkit for stable set polytopes.
//!
//! Builds the clique relaxation of webs, antiwebs and complete joins, applies
//! the disjunctive operator `P_F` and the Lovász–Schrijver operator `N` to it
//! with exact rational linear programming, and computes certified
//! disjunctive and N-ranks of graphs and of single inequalities.

pub mod budget;
pub mod error;
pub mod graph;
pub mod inequalities;
pub mod liftproject;
pub mod polyhedra;
pub mod rank;
pub mod rational;

pub use error::{Error, Result};
