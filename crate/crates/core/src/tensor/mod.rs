//! Dense complex linear algebra over multi-subsystem spaces.

mod io;
mod layout;
mod matrix;
mod network;

pub use io::{read_matrix_file, read_matrix_json, write_matrix_file, MatrixFile};
pub use layout::{kron, kron_power, partial_trace, PureState, SubsystemLayout, NORM_TOLERANCE};
pub use matrix::ComplexMatrix;
pub use network::{contract_network, Leg, LegLabel, NetworkNode};

/// Max-norm tolerance for unitarity and hermiticity checks.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;
