//! Exact q-series arithmetic and genus-0 Gopakumar-Vafa generating functions
//! for the Weierstrass fibration over `P^2` blown up at one point.
//!
//! - [`series`]: truncated Laurent/Puiseux series over the rationals.
//! - [`modular`]: eta powers, Δ, Eisenstein series, the E8 theta series and
//!   the Yau-Zaslow counts.
//! - [`lattice`]: intersection pairings, `Γ_{1,9} ≅ Γ_{1,1} ⊕ E8`,
//!   Noether-Lefschetz discriminants and Euler characteristic arithmetic.
//! - [`invariants`]: one generating function per curve family, each by a
//!   closed form and by direct summation.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exec;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod modular;
pub mod series;

pub use error::{Error, Result};
pub use exec::Exec;
pub use series::QSeries;
