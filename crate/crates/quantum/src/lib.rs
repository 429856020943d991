//! Exact small-scale quantum state simulation.
//!
//! States are stored densely: a [`StateVector`] holds `2^n` complex amplitudes and a
//! [`DensityMatrix`] holds a `2^n x 2^n` Hermitian matrix. Qubit `0` is the most
//! significant bit of a basis index, so the basis state `|x ‖ y⟩` of two registers
//! has index `x · 2^|y| + y`, matching the MSB-first convention used for classical
//! bit strings elsewhere in the workspace.
//!
//! Everything here is exact up to double precision; there are no noise models and
//! no approximate simulation methods. Sizes are bounded by [`DEFAULT_QUBIT_CAP`].

#![forbid(unsafe_code)]

pub mod channel;
pub mod circuit;
pub mod density;
pub mod gates;
pub mod measure;
pub mod oracle;
pub mod perm;
pub mod qotp;
pub mod state;

mod error;
mod index;

pub use channel::{
    avg_perm_channel, avg_perm_channel_enumerated, avg_perm_channel_sampled, avg_perm_channel_with_env,
};
pub use circuit::{build_from_description, build_with_oracles, BuiltState, CircuitDescription, GateSpec};
pub use density::{maximally_mixed, partial_trace, trace_distance, DensityMatrix};
pub use error::{Error, Result};
pub use gates::{Gate, PermutationOp, UnitaryOp};
pub use measure::{
    measure_computational, measure_density, outcome_probabilities, MeasureRandomness, Measurement,
};
pub use oracle::{
    restrict_to_zero_ancilla, type1_from_type2, type1_oracle, type1_permutation, type2_from_type1,
    type2_oracle, zero_ancilla_columns,
};
pub use perm::Permutation;
pub use qotp::{qotp_apply, qotp_apply_on, qotp_apply_state, qotp_average};
pub use state::StateVector;

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

/// Largest register simulated by default.
pub const DEFAULT_QUBIT_CAP: usize = 12;

/// Normalization tolerance for statevectors and density-matrix traces.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Unitarity tolerance (entrywise on `U U†`).
pub const UNITARY_TOLERANCE: f64 = 1e-8;

/// Smallest eigenvalue accepted as "positive" for a density matrix.
pub const POSITIVITY_TOLERANCE: f64 = -1e-8;

pub(crate) fn check_cap(n_qubits: usize) -> Result<()> {
    if n_qubits > DEFAULT_QUBIT_CAP {
        return Err(Error::CapExceeded {
            requested: n_qubits,
            cap: DEFAULT_QUBIT_CAP,
        });
    }
    Ok(())
}
