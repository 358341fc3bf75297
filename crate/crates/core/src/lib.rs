//! Exact arithmetic for nearly holomorphic modular forms of level `SL2(Z)`.
//!
//! Everything is computed on truncated q-expansions with rational
//! coefficients; no floating point is used anywhere.
//!
//! - [`series`]: truncated power series over Q and integer combinatorics
//! - [`forms`]: Eisenstein series and the one-dimensional cusp eigenforms
//! - [`nearly`]: nearly holomorphic forms as polynomials in `Y = 1/(4π Im z)`
//! - [`hecke`]: Hecke operators and eigenform detection
//! - [`brackets`]: Rankin-Cohen brackets and product expansions
//! - [`classify`]: census of eigenform products

pub mod brackets;
pub mod classify;
pub mod error;
pub mod forms;
pub mod hecke;
pub mod nearly;
pub mod series;

pub use error::{Error, Result};
pub use forms::{FormId, FormKind, HolomorphicForm};
pub use hecke::EigenReport;
pub use nearly::NearlyHolomorphicForm;
pub use series::{QExpansion, Rational};
