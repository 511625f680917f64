//! Extended-Hubbard model toolkit for small conjugated molecules.
//!
//! The pipeline starts from downfolded one- and two-body parameters
//! ([`model::ModelParameters`]), assembles the second-quantized Hamiltonian,
//! maps it to qubits with Jordan–Wigner ([`qubit`]), and then either
//! diagonalizes it exactly ([`exact`]), simulates variational quantum
//! deflation with shot sampling ([`vqd`]), or reports quantum resource
//! metrics such as the Pauli L¹-norm. [`fit`] holds the band-count
//! extrapolation used to judge convergence of the downfolded parameters.
//!
//! Energies are carried in eV throughout; conversion to hartree happens only
//! at FCIDUMP export and when reporting λ.

pub mod cli;
pub mod error;
pub mod exact;
pub mod fermion;
pub mod fit;
pub mod fixtures;
pub mod model;
pub mod qubit;
pub mod units;
pub mod vqd;

pub use error::{Error, Result};
pub use model::{InteractionVariant, ModelParameters, SpinOrbitalHamiltonian};
pub use qubit::{PauliString, PauliSum};
