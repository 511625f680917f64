//! Model parameters and the second-quantized extended-Hubbard Hamiltonian.

mod fcidump;
mod hamiltonian;
mod params;

use serde::{Deserialize, Serialize};

pub use fcidump::{export_fcidump, read_fcidump, write_fcidump, Fcidump, FCIDUMP_ZERO_THRESHOLD};
pub use hamiltonian::{
    assemble_hamiltonian, build_one_body, build_two_body, canonical_index, orthogonality_error, rotate_basis, BasisTag,
    SpinOrbitalHamiltonian, TwoBodyTensor, ERI_THRESHOLD,
};
pub use params::{load_model_params, InteractionVariant, ModelParameters};

/// Placement of spin orbitals on qubits / fermionic modes.
///
/// `Interleaved` puts orbital `i` (0-based) spin α on mode `2i` and spin β on
/// `2i + 1`, so occupation strings read `n_1α n_1β n_2α n_2β …`.
/// `Blocked` puts all α modes first (`i`) and all β modes after (`K + i`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpinOrdering {
    #[default]
    Interleaved,
    Blocked,
}

pub const ALPHA: usize = 0;
pub const BETA: usize = 1;

impl SpinOrdering {
    /// Mode index of spatial orbital `orbital` (0-based) with `spin` 0 = α, 1 = β.
    #[inline]
    pub fn mode(self, orbital: usize, spin: usize, n_orbitals: usize) -> usize {
        match self {
            SpinOrdering::Interleaved => 2 * orbital + spin,
            SpinOrdering::Blocked => spin * n_orbitals + orbital,
        }
    }

    /// Inverse of [`SpinOrdering::mode`]: `(orbital, spin)`.
    #[inline]
    pub fn orbital_spin(self, mode: usize, n_orbitals: usize) -> (usize, usize) {
        match self {
            SpinOrdering::Interleaved => (mode / 2, mode % 2),
            SpinOrdering::Blocked => (mode % n_orbitals, mode / n_orbitals),
        }
    }

    /// Bitmask of all modes carrying `spin`.
    pub fn spin_mask(self, spin: usize, n_orbitals: usize) -> u64 {
        (0..n_orbitals).fold(0u64, |m, i| m | 1 << self.mode(i, spin, n_orbitals))
    }
}

impl std::str::FromStr for SpinOrdering {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "interleaved" => Ok(SpinOrdering::Interleaved),
            "blocked" => Ok(SpinOrdering::Blocked),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown spin ordering {other:?}"
            ))),
        }
    }
}
