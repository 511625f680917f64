//! Statevector simulation of variational quantum deflation with a
//! particle-conserving A-gate ansatz, and shot-based energy estimation.

mod ansatz;
mod optimize;
mod sampling;
mod statevector;

use serde::{Deserialize, Serialize};

pub use ansatz::{a_gate, apply_circuit, build_ansatz, AnsatzCircuit};
pub use optimize::{optimize_vqd, s_squared_pauli, vqd_cost, Optimizer, VqdOptions, VqdResult, VqdState};
pub use sampling::{
    repeat_sampling, sample_energy, GroupingMode, MeasurementPlan, SampleStatistics, SamplingOptions, ShotAllocation,
};
pub use statevector::{expectation, SparseOperator, Statevector};

use crate::error::{Error, Result};
use crate::exact;
use crate::model::{rotate_basis, SpinOrbitalHamiltonian, SpinOrdering};
use crate::qubit::{jordan_wigner_with, PauliSum};

/// Orbital basis the qubit Hamiltonian is expressed in.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitalBasis {
    /// The localized orbitals the model parameters are given in.
    #[default]
    Wannier,
    /// Closed-shell SCF orbitals.
    Scf,
}

impl std::str::FromStr for OrbitalBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wannier" => Ok(OrbitalBasis::Wannier),
            "scf" => Ok(OrbitalBasis::Scf),
            other => Err(Error::InvalidArgument(format!("unknown orbital basis {other:?}"))),
        }
    }
}

/// Everything needed to replay a VQD + sampling run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VqdSampleConfig {
    pub n_states: usize,
    /// Brick-wall sublayers; `None` means `4K`.
    pub layers: Option<usize>,
    pub ordering: SpinOrdering,
    pub basis: OrbitalBasis,
    pub repeats: usize,
    pub seed: u64,
    pub vqd: VqdOptions,
    pub sampling: SamplingOptions,
}

impl Default for VqdSampleConfig {
    fn default() -> Self {
        VqdSampleConfig {
            n_states: 3,
            layers: None,
            ordering: SpinOrdering::Blocked,
            basis: OrbitalBasis::Wannier,
            repeats: 1000,
            seed: 42,
            vqd: VqdOptions::default(),
            sampling: SamplingOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampledState {
    pub label: String,
    /// Exact `⟨H⟩` of the optimized state minus the exact ground energy (eV).
    pub vqd_excitation: f64,
    /// Matching exact singlet excitation energy (eV).
    pub exact_excitation: f64,
    /// Mean sampled energy minus the exact ground energy (eV).
    pub mean: f64,
    pub std: f64,
    pub s_squared: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplingReport {
    pub seed: u64,
    pub shots: u64,
    pub repeats: usize,
    pub grouping: GroupingMode,
    pub layers: usize,
    pub n_parameters: usize,
    pub measured_circuits: usize,
    pub exact_ground_energy: f64,
    pub states: Vec<SampledState>,
}

/// Qubit Hamiltonian, ansatz and exact reference singlets for one run.
#[derive(Debug, Clone)]
pub struct VqdProblem {
    pub psum: PauliSum,
    pub circuit: AnsatzCircuit,
    /// Lowest `n_states` exact singlet energies (eV).
    pub singlets: Vec<f64>,
}

impl VqdProblem {
    pub fn new(ham: &SpinOrbitalHamiltonian, n_electrons: usize, config: &VqdSampleConfig) -> Result<Self> {
        let k = ham.n_orbitals();
        let ham = match config.basis {
            OrbitalBasis::Wannier => ham.clone(),
            OrbitalBasis::Scf => rotate_basis(ham, &exact::scf_rhf(ham, n_electrons)?.coefficients)?,
        };
        let layers = config.layers.unwrap_or(4 * k);
        Ok(VqdProblem {
            psum: jordan_wigner_with(&ham, config.ordering),
            circuit: build_ansatz(k, n_electrons, layers, config.ordering)?,
            singlets: exact::singlet_energies(&ham, n_electrons, config.n_states)?,
        })
    }

    /// Runs VQD with the optimizer settings and seed of `config`.
    pub fn optimize(&self, config: &VqdSampleConfig) -> Result<VqdResult> {
        let options = VqdOptions {
            seed: config.seed,
            ..config.vqd.clone()
        };
        optimize_vqd(&self.psum, &self.circuit, config.n_states, &options)
    }

    /// Repeated sampling of every optimized state. Sampling streams of
    /// state `k` start at `seed + k·repeats`.
    pub fn sample(&self, result: &VqdResult, config: &VqdSampleConfig) -> Result<SamplingReport> {
        if config.repeats < 2 {
            return Err(Error::InvalidArgument(format!(
                "repeats must be at least 2, got {}",
                config.repeats
            )));
        }
        let e0 = self.singlets[0];
        let mut states = Vec::with_capacity(result.states.len());
        let mut measured_circuits = 0;
        for (i, (state, exact_e)) in result.states.iter().zip(&self.singlets).enumerate() {
            let seed = config.seed.wrapping_add((i * config.repeats) as u64);
            let stats = repeat_sampling(&self.psum, &state.state, &config.sampling, config.repeats, seed)?;
            measured_circuits = stats.measured_circuits;
            states.push(SampledState {
                label: format!("S{i}"),
                vqd_excitation: state.energy - e0,
                exact_excitation: exact_e - e0,
                mean: stats.mean - e0,
                std: stats.std,
                s_squared: state.s_squared,
                converged: state.converged,
            });
        }
        Ok(SamplingReport {
            seed: config.seed,
            shots: config.sampling.shots,
            repeats: config.repeats,
            grouping: config.sampling.grouping,
            layers: self.circuit.layers,
            n_parameters: self.circuit.n_parameters(),
            measured_circuits,
            exact_ground_energy: e0,
            states,
        })
    }
}

/// VQD for the lowest `n_states` singlets, then repeated sampling of each
/// optimized state.
pub fn vqd_sample(
    ham: &SpinOrbitalHamiltonian,
    n_electrons: usize,
    config: &VqdSampleConfig,
) -> Result<(VqdResult, SamplingReport)> {
    if config.repeats < 2 {
        return Err(Error::InvalidArgument(format!(
            "repeats must be at least 2, got {}",
            config.repeats
        )));
    }
    let problem = VqdProblem::new(ham, n_electrons, config)?;
    let result = problem.optimize(config)?;
    let report = problem.sample(&result, config)?;
    Ok((result, report))
}
