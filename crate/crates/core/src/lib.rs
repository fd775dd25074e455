//! Multivariate dimension polynomials of finitely generated
//! difference-differential field extensions defined by linear systems.
//!
//! The crate offers three routes to the same polynomial: closed-form
//! counting over leader exponents ([`setdim`], [`dimpoly`]), characteristic
//! sets of linear ideals ([`linpoly`]), and Gröbner bases of the module of
//! Kähler differentials ([`dmod`]). The brute-force [`oracle`] enumerates
//! terms directly and is used to cross-check all of them.

pub mod cli;
pub mod coeff;
pub mod dmod;
pub mod dimpoly;
pub mod error;
pub mod lambda_monoid;
pub mod lincomb;
pub mod linpoly;
pub mod numpoly;
pub mod oracle;
pub mod setdim;
pub mod system;

pub use error::{Error, Result};
