//! Fermi-Hubbard Hamiltonian, its Pauli decomposition and small-instance oracles.

mod dense;
mod hubbard;
mod pauli;

pub use dense::{dense_ground_energy, exact_ground_energy, ground_state, reconstruct_matrix};
pub use hubbard::{build_hubbard_pauli, Boundary, HubbardSpec};
pub use pauli::{norm2_squared, Pauli, PauliDecomposition, PauliMask, PauliString};
