//! Entangling power (EP) and entangling power deviation (EPD) of unitaries
//! on bipartite Hilbert spaces of arbitrary local dimensions.
//!
//! Three independent routes are provided and cross-checked against each
//! other:
//!
//! * exact evaluation through permutation-operator traces ([`engine`]),
//!   with a dense 4-copy oracle for small dimensions and a tensor-network
//!   cycle path for larger ones;
//! * closed-form formulas for the standard gate families ([`gates`]);
//! * seeded Monte Carlo sampling of Haar-random product inputs ([`mc`]).
//!
//! [`verify`] bundles the cross-checks into a pass/fail report and [`cli`]
//! drives everything from the `epd` binary.

pub mod cli;
pub mod engine;
pub mod error;
pub mod gates;
pub mod haar;
pub mod mc;
pub mod perm;
mod reduce;
pub mod verify;
pub mod tensor;

pub use error::{Error, Result};
