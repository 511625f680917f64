//! Qubit Hamiltonians: Pauli algebra, Jordan–Wigner mapping, measurement
//! grouping and L¹-norm based cost estimates.

mod cost;
mod grouping;
mod jw;
mod pauli;

pub use cost::{l1_norm, l1_norm_ev, measurement_bound, qdrift_cost, term_count, MeasurementBound};
pub use grouping::{abelian_group, abelian_group_with, GroupingStrategy, MeasurementGroup, MeasurementGrouping};
pub use jw::{jordan_wigner, jordan_wigner_operator, jordan_wigner_with};
pub use pauli::{PauliString, PauliSum, PAULI_THRESHOLD};
