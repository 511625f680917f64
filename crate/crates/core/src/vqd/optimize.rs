//! Variational quantum deflation: sequential minimization of
//! `F_k(θ) = ⟨H⟩ + Σ_{i<k} β_i |⟨Ψ_i|Ψ(θ)⟩|² (+ μ ⟨S²⟩)`.

use std::sync::Mutex;

use argmin::core::{CostFunction, Executor, Gradient, State, TerminationReason};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::neldermead::NelderMead;
use argmin::solver::quasinewton::LBFGS;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ansatz::{apply_circuit, apply_gate, gate_derivatives, AnsatzCircuit};
use super::statevector::{SparseOperator, Statevector};
use crate::error::{Error, Result};
use crate::fermion::s_squared_operator;
use crate::qubit::{jordan_wigner_operator, l1_norm_ev, PauliSum};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimizer {
    /// Quasi-Newton with exact (adjoint) gradients.
    #[default]
    Lbfgs,
    /// Derivative-free simplex search.
    NelderMead,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VqdOptions {
    /// Overlap penalty weights; `None` uses λ (eV) for every state.
    pub betas: Option<Vec<f64>>,
    pub seed: u64,
    /// Independent random starts per state; the lowest cost wins.
    pub restarts: usize,
    /// Convergence tolerance on the cost change (eV).
    pub tol: f64,
    pub max_iterations: u64,
    /// Weight μ (eV) of the `⟨S²⟩` penalty steering towards singlets; 0 disables it.
    pub spin_penalty: f64,
    pub optimizer: Optimizer,
    /// Initial angles are drawn uniformly from `[−init_scale, init_scale]`.
    pub init_scale: f64,
}

impl Default for VqdOptions {
    fn default() -> Self {
        VqdOptions {
            betas: None,
            seed: 42,
            restarts: 8,
            tol: 1e-6,
            max_iterations: 5000,
            spin_penalty: 5.0,
            optimizer: Optimizer::Lbfgs,
            init_scale: std::f64::consts::PI,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VqdState {
    pub parameters: Vec<f64>,
    /// `⟨H⟩` (eV), without penalties.
    pub energy: f64,
    /// Final value of the penalized cost (eV).
    pub cost: f64,
    pub s_squared: f64,
    /// `|⟨Ψ_k|Ψ_i⟩|²` against every earlier state.
    pub overlaps: Vec<f64>,
    pub iterations: u64,
    pub converged: bool,
    /// Cost after each gradient evaluation of the winning start.
    pub history: Vec<f64>,
    #[serde(skip)]
    pub state: Statevector,
}

#[derive(Debug, Clone, Serialize)]
pub struct VqdResult {
    pub betas: Vec<f64>,
    pub states: Vec<VqdState>,
}

/// Exact VQD cost from statevectors: `⟨H⟩ + Σ β_i |⟨Ψ_i|Ψ(θ)⟩|²`.
pub fn vqd_cost(
    circuit: &AnsatzCircuit,
    params: &[f64],
    prior: &[Statevector],
    psum: &PauliSum,
    betas: &[f64],
) -> Result<f64> {
    if betas.len() < prior.len() {
        return Err(Error::InvalidArgument(format!(
            "{} prior states but only {} beta values",
            prior.len(),
            betas.len()
        )));
    }
    let sv = apply_circuit(circuit, params)?;
    let energy = super::expectation(psum, &sv)?;
    let penalty: f64 = prior.iter().zip(betas).map(|(p, b)| b * p.inner(&sv).norm_sqr()).sum();
    Ok(energy + penalty)
}

/// Penalized cost as a Hermitian operator `M = H + μS² + Σ β_i |Ψ_i⟩⟨Ψ_i|`.
struct Problem<'a> {
    circuit: &'a AnsatzCircuit,
    hamiltonian: &'a SparseOperator,
    spin: Option<(f64, &'a SparseOperator)>,
    priors: Vec<(f64, &'a Statevector)>,
    history: Mutex<Vec<f64>>,
}

impl Problem<'_> {
    fn apply_m(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = self.hamiltonian.apply(psi);
        if let Some((mu, s2)) = self.spin {
            for (o, v) in out.iter_mut().zip(s2.apply(psi)) {
                *o += mu * v;
            }
        }
        for (beta, p) in &self.priors {
            let ov: Complex64 = p.amplitudes().iter().zip(psi).map(|(a, b)| a.conj() * b).sum();
            for (o, a) in out.iter_mut().zip(p.amplitudes()) {
                *o += *beta * ov * a;
            }
        }
        out
    }

    fn value(&self, params: &[f64]) -> f64 {
        let sv = apply_circuit(self.circuit, params).expect("parameter count checked");
        let m = self.apply_m(sv.amplitudes());
        sv.amplitudes().iter().zip(&m).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Adjoint-mode gradient. Each A gate is Hermitian and unitary, so it is
    /// its own inverse when walking the circuit backwards.
    fn grad(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let mut phi = apply_circuit(self.circuit, params)
            .expect("parameter count checked")
            .amplitudes()
            .to_vec();
        let mut lambda = self.apply_m(&phi);
        let value: f64 = phi.iter().zip(&lambda).map(|(a, b)| (a.conj() * b).re).sum();
        let mut grad = vec![0.0; params.len()];
        for (g, &q) in self.circuit.gates.iter().enumerate().rev() {
            let (theta, ph) = (params[2 * g], params[2 * g + 1]);
            apply_gate(&mut phi, q, theta, ph);
            let [dt, dp] = gate_derivatives(&phi, q, theta, ph);
            grad[2 * g] = 2.0 * lambda.iter().zip(&dt).map(|(l, d)| (l.conj() * d).re).sum::<f64>();
            grad[2 * g + 1] = 2.0 * lambda.iter().zip(&dp).map(|(l, d)| (l.conj() * d).re).sum::<f64>();
            apply_gate(&mut lambda, q, theta, ph);
        }
        (value, grad)
    }
}

impl CostFunction for Problem<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.value(p))
    }
}

impl Gradient for Problem<'_> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;

    fn gradient(&self, p: &Vec<f64>) -> std::result::Result<Vec<f64>, argmin::core::Error> {
        let (value, grad) = self.grad(p);
        self.history.lock().expect("history lock").push(value);
        Ok(grad)
    }
}

struct Run {
    params: Vec<f64>,
    cost: f64,
    iterations: u64,
    converged: bool,
    history: Vec<f64>,
}

fn minimize(problem: Problem<'_>, init: Vec<f64>, options: &VqdOptions) -> Result<Run> {
    let numeric = |e: argmin::core::Error| Error::Numerical(format!("VQD optimizer: {e}"));
    let (params, cost, iterations, reason, problem) = match options.optimizer {
        Optimizer::Lbfgs => {
            let solver = LBFGS::new(MoreThuenteLineSearch::new(), 10)
                .with_tolerance_cost(options.tol * 1e-2)
                .and_then(|s| s.with_tolerance_grad(1e-5))
                .map_err(numeric)?;
            let res = Executor::new(problem, solver)
                .configure(|s| s.param(init).max_iters(options.max_iterations))
                .run()
                .map_err(numeric)?;
            let state = res.state();
            (
                state.get_best_param().cloned().unwrap_or_default(),
                state.get_best_cost(),
                state.get_iter(),
                state.get_termination_reason().cloned(),
                res.problem.problem,
            )
        }
        Optimizer::NelderMead => {
            let n = init.len();
            let mut simplex = vec![init.clone()];
            for i in 0..n {
                let mut v = init.clone();
                v[i] += 0.5;
                simplex.push(v);
            }
            let solver = NelderMead::new(simplex)
                .with_sd_tolerance(options.tol)
                .map_err(numeric)?;
            let res = Executor::new(problem, solver)
                .configure(|s| s.max_iters(options.max_iterations))
                .run()
                .map_err(numeric)?;
            let state = res.state();
            (
                state.get_best_param().cloned().unwrap_or_default(),
                state.get_best_cost(),
                state.get_iter(),
                state.get_termination_reason().cloned(),
                res.problem.problem,
            )
        }
    };
    let history = problem
        .map(|p| p.history.into_inner().expect("history lock"))
        .unwrap_or_default();
    Ok(Run {
        params,
        cost,
        iterations,
        converged: !matches!(reason, Some(TerminationReason::MaxItersReached) | None),
        history,
    })
}

/// `S²` in the circuit's spin ordering, as a qubit operator.
pub fn s_squared_pauli(circuit: &AnsatzCircuit) -> PauliSum {
    jordan_wigner_operator(&s_squared_operator(circuit.n_orbitals, circuit.ordering))
}

/// Finds `n_states` states in order, each penalized against all earlier ones.
/// Deterministic for a given seed: restart `r` of state `k` draws its
/// starting angles from stream `seed + 1000·k + r`.
pub fn optimize_vqd(
    psum: &PauliSum,
    circuit: &AnsatzCircuit,
    n_states: usize,
    options: &VqdOptions,
) -> Result<VqdResult> {
    if n_states == 0 {
        return Err(Error::InvalidArgument("n_states must be at least 1".into()));
    }
    if options.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    if psum.n_qubits() != circuit.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: circuit.n_qubits,
            got: psum.n_qubits(),
        });
    }
    let betas = match &options.betas {
        Some(b) if b.len() + 1 < n_states => {
            return Err(Error::InvalidArgument(format!(
                "{n_states} states need {} beta values, got {}",
                n_states - 1,
                b.len()
            )))
        }
        Some(b) => b.clone(),
        None => vec![l1_norm_ev(psum); n_states.saturating_sub(1)],
    };
    let hamiltonian = SparseOperator::from_pauli_sum(psum);
    let s2_pauli = s_squared_pauli(circuit);
    let s2 = SparseOperator::from_pauli_sum(&s2_pauli);
    let n_params = circuit.n_parameters();

    let mut states: Vec<VqdState> = Vec::with_capacity(n_states);
    for k in 0..n_states {
        let priors: Vec<&Statevector> = states.iter().map(|s| &s.state).collect();
        let runs: Vec<Result<Run>> = (0..options.restarts)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(1000 * k as u64 + r as u64));
                let init: Vec<f64> = (0..n_params)
                    .map(|_| rng.random_range(-options.init_scale..=options.init_scale))
                    .collect();
                let problem = Problem {
                    circuit,
                    hamiltonian: &hamiltonian,
                    spin: (options.spin_penalty != 0.0).then_some((options.spin_penalty, &s2)),
                    priors: betas.iter().copied().zip(priors.iter().copied()).collect(),
                    history: Mutex::new(Vec::new()),
                };
                minimize(problem, init, options)
            })
            .collect();
        let mut best: Option<Run> = None;
        for run in runs {
            let run = run?;
            if best.as_ref().is_none_or(|b| run.cost < b.cost) {
                best = Some(run);
            }
        }
        let best = best.expect("at least one restart");
        let sv = apply_circuit(circuit, &best.params)?;
        let energy = hamiltonian.expectation(sv.amplitudes());
        let overlaps = states.iter().map(|s| s.state.inner(&sv).norm_sqr()).collect();
        states.push(VqdState {
            energy,
            cost: best.cost,
            s_squared: s2.expectation(sv.amplitudes()),
            overlaps,
            iterations: best.iterations,
            converged: best.converged,
            history: best.history,
            parameters: best.params,
            state: sv,
        });
    }
    Ok(VqdResult { betas, states })
}
