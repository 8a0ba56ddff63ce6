//! Exact polynomial algebra over the rationals, Gröbner bases, constructible
//! sets and group-action checks, with executable scenarios for double coset
//! quotient examples.

pub mod action;
pub mod cli;
pub mod error;
pub mod fforacle;
pub mod geometry;
pub mod groebner;
pub mod morphism;
pub mod polyring;
pub mod scenarios;

pub use error::{Error, Result};
pub use groebner::Ideal;
pub use polyring::{Monomial, MonomialOrder, Polynomial, Rational, RationalPoint, Ring};
