//! Noncommutative Schur function machinery for (3+1)-free posets.
//!
//! Everything is exact: integer polynomials in `t` for coefficients and
//! big rationals inside the quotient engine.

pub mod arrow;
pub mod chromatic;
pub mod eqgraph;
pub mod error;
pub mod io;
pub mod ncalg;
pub mod poset;
pub mod quotient;
pub mod rmatrix;
pub mod symfun;
pub mod tableaux;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use poset::{Content, Elem, Poset, Word};
