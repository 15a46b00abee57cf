//! Exact arithmetic over F_p, F_p[X], F_{p^n} and square matrices.

pub mod arith;
pub mod ext;
pub mod ext_poly;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use ext::{ExtElem, ExtField, DEFAULT_FIELD_CAP};
pub use ext_poly::ExtPoly;
pub use matrix::{matrix_order, ExtMatrix, FpMatrix};
pub use parse::{parse_coeffs, parse_poly};
pub use poly::FpPoly;
