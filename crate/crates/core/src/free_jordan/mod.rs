//! The free `ℤ₂`-graded commutative nonassociative algebra on even variables
//! `x_i` and odd variables `y_j`.
//!
//! No Jordan-identity rewriting is done here: every check downstream
//! evaluates in `B_m`, which quotients by all identities at once.

pub mod json;
mod linearize;
mod monomial;
mod polynomial;

pub use linearize::{linearization_factor, multilinear_basis, multilinearize, tree_count, Multilinearization};
pub(crate) use linearize::for_each_permutation;
pub use monomial::{Kind, Monomial, MultidegreeProfile, Variable};
pub use polynomial::{left_normed, Cofactor, GradedPolynomial, Parity};
