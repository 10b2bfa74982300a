//! Exact computations with the graded identities of the Jordan superalgebra
//! `B_m = K ⊕ V_m` of a nondegenerate symmetric bilinear form.
//!
//! The crate is organised bottom-up:
//!
//! * [`free_jordan`]: monomials and polynomials of the free commutative
//!   (nonassociative) algebra on even variables `x_i` and odd variables `y_j`.
//! * [`bm_model`]: the concrete superalgebra `B_m` and evaluation into it.
//! * [`identities`]: identity testing, `P_{k,n}(B_m)` dimensions and
//!   straightening into doubly standard tableaux.
//! * [`tableaux`]: double tableaux, their polynomial realizations and the
//!   highest weight vector generators.
//! * [`cochar`]: partitions and the predicted graded cocharacter.
//! * [`wqo`]: the product order on `ℕ^k` and finite-basis extraction.
//! * [`cli`]: the command-line driver behind the `jordan-specht` binary.
//!
//! All coefficients are exact rationals.

pub mod bm_model;
pub mod cli;
pub mod cochar;
mod error;
pub mod free_jordan;
pub mod identities;
pub mod linalg;
pub mod rational;
pub mod tableaux;
pub mod wqo;

pub use error::{Error, Result};
pub use rational::Rational;
