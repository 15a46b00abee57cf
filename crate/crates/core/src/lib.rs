//! Quasi-subfield polynomials over finite fields.

pub mod algebra;
pub mod ecdlp;
pub mod error;
pub mod families;
pub mod qsp;
pub mod symbolic;

pub use algebra::{ExtElem, ExtField, ExtMatrix, ExtPoly, FpMatrix, FpPoly};
pub use error::{Error, Result};
pub use qsp::{Beta, FamilyTag, LinearizedQsp, SearchRecord};
pub use symbolic::{SymEntry, SymMatrix};
