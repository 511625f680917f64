//! L¹-norm and the sampling / qDRIFT cost estimates derived from it.

use serde::Serialize;

use super::pauli::{PauliString, PauliSum};
use crate::error::{Error, Result};
use crate::units::ev_to_hartree;

/// `Σ |h_l|` over non-identity terms, in eV.
pub fn l1_norm_ev(psum: &PauliSum) -> f64 {
    psum.non_identity_terms().map(|(_, c)| c.abs()).sum()
}

/// `Σ |h_l|` over non-identity terms, in hartree.
pub fn l1_norm(psum: &PauliSum) -> f64 {
    ev_to_hartree(l1_norm_ev(psum))
}

/// Number of stored Pauli strings, identity included.
pub fn term_count(psum: &PauliSum) -> usize {
    psum.len()
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasurementBound {
    /// Worst-case total shot count `(λ/ε)²` (unit intrinsic deviations).
    pub m_bound: f64,
    /// Optimal per-term share `|h_l| / λ`.
    pub allocation: Vec<(PauliString, f64)>,
}

/// Shot budget bound for estimating `⟨H⟩` to standard error `epsilon_ev`.
pub fn measurement_bound(psum: &PauliSum, epsilon_ev: f64) -> Result<MeasurementBound> {
    if !epsilon_ev.is_finite() || epsilon_ev <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon_ev}"
        )));
    }
    let lambda = l1_norm_ev(psum);
    let allocation = psum
        .non_identity_terms()
        .map(|(p, c)| (*p, if lambda > 0.0 { c.abs() / lambda } else { 0.0 }))
        .collect();
    Ok(MeasurementBound {
        m_bound: (lambda / epsilon_ev).powi(2),
        allocation,
    })
}

/// Conventional qDRIFT channel count `⌈2λ²/ε²⌉`; order of magnitude only.
/// `lambda` and `epsilon` must be in the same unit.
pub fn qdrift_cost(lambda: f64, epsilon: f64) -> Result<u64> {
    if !lambda.is_finite() || lambda <= 0.0 || !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "qDRIFT cost needs positive inputs, got lambda={lambda}, epsilon={epsilon}"
        )));
    }
    Ok((2.0 * lambda * lambda / (epsilon * epsilon)).ceil() as u64)
}
