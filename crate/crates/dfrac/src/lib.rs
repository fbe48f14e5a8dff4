//! Discrete fractional calculus on unit-step grids.
//!
//! The crate implements, over exact rational orders and base points:
//!
//! * falling/rising factorial powers with pole-aware gamma ratios;
//! * the four fractional sums (delta/nabla × left/right) and their power
//!   rules and semigroup laws;
//! * Riemann, Caputo, and dual Caputo fractional differences, together with
//!   the relations between them and the inversion (sum-of-difference)
//!   formulas;
//! * delta↔nabla dual identities, the Q-operator, and the integration-by-
//!   parts formulas, each exposed as a residual-reporting verifier;
//! * delta and nabla discrete Mittag-Leffler functions;
//! * solvers for linear Caputo fractional difference initial value problems
//!   (closed Mittag-Leffler form, implicit marching, Picard iteration).
//!
//! Everything is pure and immutable: values are safe to share across
//! threads, and all randomness is seed-driven.

pub mod error;
pub mod fde;
pub mod fpow;
pub mod gamma;
pub mod grid;
pub mod ml;
pub mod ops;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use fpow::{diff_n, falling, falling_strict, rising, DiffOp};
pub use gamma::{classify, floor_order, gamma_ratio, PoleClass};
pub use grid::{rho, sigma, Direction, Grid, GridFn};
pub use report::IdentityReport;
pub use scalar::Rat;
