//! Exact computations around the LULU multiplication map.
//!
//! The crate provides sparse rational polynomials and polynomial matrices,
//! monomial ideals, matrix realizations of the classical root systems, the
//! ideal cut out by the Cartan projection of conjugated negative root
//! vectors, Coxeter arrangements with their nerve complexes and
//! Stanley-Reisner ideals, and the fiber ideals of the LULU map for
//! `SL(n+1)`.

pub mod arrangement;
pub mod error;
pub mod fiber;
pub mod ideal;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod report;
pub mod phi;
pub mod roots;

pub use error::{Error, Result};
pub use ideal::{minimal_generators, MonomialIdeal};
pub use matrix::{DetMethod, PolyMatrix, QMatrix, Triangle};
pub use poly::{poly_arith, Monomial, PolyOp, Polynomial};
pub use rational::Rational;
pub use roots::{build_root_datum, one_param, proj_h, CartanBasis, Family, Root, RootDatum, RootSystemType};
