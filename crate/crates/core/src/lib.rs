//! Exact polynomial algebra, Gröbner bases and the cover-relation solver.

// index loops read closer to the matrix formulas
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cover;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod monomial;
mod parse;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod subst;

pub use error::{Error, Result};
pub use matrix::{pfaffian4, PolyMatrix};
pub use monomial::{Monomial, TermOrder};
pub use poly::{Polynomial, Term};
pub use rational::Rational;
pub use ring::Ring;
pub use subst::Substitution;
