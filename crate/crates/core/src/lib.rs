//! Exact-arithmetic toolkit for affine Demazure characters, fermionic forms
//! and one-dimensional sums over the simply-laced affine types.
//!
//! Everything is computed over Z and Q; there is no floating point anywhere.

pub mod cartan;
pub mod demazure_side;
pub mod fermionic;
pub mod groupring;
pub mod kr_crystal;
pub mod report;
pub mod error;
pub mod nu;
pub mod qpoly;
pub mod weight;
pub mod weyl;

/// Exact rational scalar used for delta coefficients and the bilinear form.
pub type Rat = num_rational::Ratio<i64>;

pub use cartan::{root_system, Family, RootSystemData};
pub use error::{Error, Result};
pub use weight::{AffineWeight, FiniteWeight};
