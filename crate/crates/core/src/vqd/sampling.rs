//! Shot-based energy estimation: rotate to each measurement basis, draw a
//! multinomial sample of bitstrings and average Pauli parities.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::statevector::Statevector;
use crate::error::{Error, Result};
use crate::qubit::{abelian_group_with, GroupingStrategy, PauliString, PauliSum};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupingMode {
    /// Qubit-wise commuting terms share one measured circuit.
    #[default]
    Abelian,
    /// Every term is measured in its own circuit.
    None,
}

impl fmt::Display for GroupingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupingMode::Abelian => "abelian",
            GroupingMode::None => "none",
        })
    }
}

impl FromStr for GroupingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "abelian" => Ok(GroupingMode::Abelian),
            "none" => Ok(GroupingMode::None),
            other => Err(Error::InvalidArgument(format!("unknown grouping mode {other:?}"))),
        }
    }
}

/// How the shot count is distributed over measured circuits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShotAllocation {
    /// Every circuit receives the full shot count.
    #[default]
    PerCircuit,
    /// The shot count is a total budget split evenly; the remainder goes
    /// to the earliest circuits.
    SplitTotal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingOptions {
    pub shots: u64,
    pub grouping: GroupingMode,
    pub strategy: GroupingStrategy,
    pub allocation: ShotAllocation,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            shots: 10_000,
            grouping: GroupingMode::Abelian,
            strategy: GroupingStrategy::LargestDegreeFirst,
            allocation: ShotAllocation::PerCircuit,
        }
    }
}

/// One measured circuit: a basis rotation, the terms it estimates (as
/// support masks) and its shot count.
#[derive(Debug, Clone)]
struct Circuit {
    basis: PauliString,
    terms: Vec<(u64, f64)>,
    shots: u64,
}

/// Measurement circuits with outcome probabilities for a fixed state.
#[derive(Debug, Clone)]
pub struct MeasurementPlan {
    identity: f64,
    circuits: Vec<Circuit>,
    probabilities: Vec<Vec<f64>>,
}

fn support(p: &PauliString) -> u64 {
    p.x_bits() | p.z_bits()
}

/// Amplitudes after rotating every qubit so that `basis` becomes diagonal:
/// `H` for X, `H·S†` for Y.
fn rotate(sv: &Statevector, basis: &PauliString) -> Vec<Complex64> {
    let mut amps = sv.amplitudes().to_vec();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for q in 0..basis.n_qubits() {
        let letter = basis.letter(q);
        if letter != 'X' && letter != 'Y' {
            continue;
        }
        let bit = 1usize << q;
        for b in 0..amps.len() {
            if b & bit != 0 {
                continue;
            }
            let (a0, mut a1) = (amps[b], amps[b | bit]);
            if letter == 'Y' {
                a1 *= -Complex64::i();
            }
            amps[b] = (a0 + a1) * h;
            amps[b | bit] = (a0 - a1) * h;
        }
    }
    amps
}

impl MeasurementPlan {
    pub fn new(psum: &PauliSum, sv: &Statevector, options: &SamplingOptions) -> Result<Self> {
        if options.shots == 0 {
            return Err(Error::InvalidArgument("shots must be positive".into()));
        }
        if psum.n_qubits() != sv.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: psum.n_qubits(),
                got: sv.n_qubits(),
            });
        }
        let groups: Vec<(PauliString, Vec<(u64, f64)>)> = match options.grouping {
            GroupingMode::Abelian => abelian_group_with(psum, options.strategy)
                .groups
                .into_iter()
                .map(|g| (g.basis, g.terms.iter().map(|(p, c)| (support(p), *c)).collect()))
                .collect(),
            GroupingMode::None => psum
                .non_identity_terms()
                .map(|(p, c)| (*p, vec![(support(p), c)]))
                .collect(),
        };
        let n = groups.len() as u64;
        let circuits: Vec<Circuit> = groups
            .into_iter()
            .enumerate()
            .map(|(i, (basis, terms))| {
                let shots = match options.allocation {
                    ShotAllocation::PerCircuit => options.shots,
                    ShotAllocation::SplitTotal => options.shots / n + u64::from((i as u64) < options.shots % n),
                };
                Circuit { basis, terms, shots }
            })
            .collect();
        if circuits.iter().any(|c| c.shots == 0) {
            return Err(Error::InvalidArgument(format!(
                "{} shots cannot cover {} measured circuits",
                options.shots,
                circuits.len()
            )));
        }
        let probabilities = circuits
            .iter()
            .map(|c| rotate(sv, &c.basis).iter().map(|a| a.norm_sqr()).collect())
            .collect();
        Ok(MeasurementPlan {
            identity: psum.identity_coefficient(),
            circuits,
            probabilities,
        })
    }

    pub fn n_circuits(&self) -> usize {
        self.circuits.len()
    }

    /// Noise-free value of the estimator (the exact expectation).
    pub fn exact(&self) -> f64 {
        self.identity
            + self
                .circuits
                .iter()
                .zip(&self.probabilities)
                .map(|(c, probs)| {
                    c.terms
                        .iter()
                        .map(|&(mask, coef)| coef * parity_mean(probs.iter().copied().enumerate(), mask, 1.0))
                        .sum::<f64>()
                })
                .sum::<f64>()
    }

    /// One shot-noise realization of the energy estimate.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let mut energy = self.identity;
        for (c, probs) in self.circuits.iter().zip(&self.probabilities) {
            let counts = multinomial(c.shots, probs, rng);
            let outcomes = counts.iter().map(|&(b, n)| (b, n as f64));
            let outcomes: Vec<(usize, f64)> = outcomes.collect();
            for &(mask, coef) in &c.terms {
                energy += coef * parity_mean(outcomes.iter().copied(), mask, c.shots as f64);
            }
        }
        energy
    }
}

/// `Σ_b w_b (−1)^{|b ∧ mask|} / total`.
fn parity_mean(weights: impl Iterator<Item = (usize, f64)>, mask: u64, total: f64) -> f64 {
    weights
        .map(|(b, w)| {
            if (b as u64 & mask).count_ones().is_multiple_of(2) {
                w
            } else {
                -w
            }
        })
        .sum::<f64>()
        / total
}

/// Multinomial draw by sequential conditional binomials; returns only the
/// outcomes that occurred.
fn multinomial(shots: u64, probs: &[f64], rng: &mut ChaCha8Rng) -> Vec<(usize, u64)> {
    let mut remaining = shots;
    let mut mass = 1.0;
    let mut out = Vec::new();
    for (b, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if p <= 0.0 {
            continue;
        }
        let q = if mass > p { (p / mass).clamp(0.0, 1.0) } else { 1.0 };
        let n = if q >= 1.0 {
            remaining
        } else {
            Binomial::new(remaining, q).expect("probability in [0, 1]").sample(rng)
        };
        if n > 0 {
            out.push((b, n));
        }
        remaining -= n;
        mass -= p;
    }
    if remaining > 0 {
        // rounding left some mass unassigned: give it to the likeliest outcome
        let b = probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(b, _)| b);
        match out.iter_mut().find(|(o, _)| *o == b) {
            Some(e) => e.1 += remaining,
            None => out.push((b, remaining)),
        }
    }
    out
}

/// Single shot-based estimate of `⟨sv|H|sv⟩`, deterministic in `seed`.
pub fn sample_energy(psum: &PauliSum, sv: &Statevector, options: &SamplingOptions, seed: u64) -> Result<f64> {
    let plan = MeasurementPlan::new(psum, sv, options)?;
    Ok(plan.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStatistics {
    pub mean: f64,
    /// Sample standard deviation over repeats (n − 1 denominator).
    pub std: f64,
    pub repeats: usize,
    pub measured_circuits: usize,
}

/// `repeats` independent estimates; repeat `i` uses stream `seed + i`.
/// Estimates are computed in parallel and reduced in index order, so the
/// result does not depend on thread scheduling.
pub fn repeat_sampling(
    psum: &PauliSum,
    sv: &Statevector,
    options: &SamplingOptions,
    repeats: usize,
    seed: u64,
) -> Result<SampleStatistics> {
    if repeats < 2 {
        return Err(Error::InvalidArgument(format!(
            "repeats must be at least 2, got {repeats}"
        )));
    }
    let plan = MeasurementPlan::new(psum, sv, options)?;
    let estimates: Vec<f64> = (0..repeats)
        .into_par_iter()
        .map(|i| plan.sample(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))))
        .collect();
    let n = repeats as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(SampleStatistics {
        mean,
        std: var.sqrt(),
        repeats,
        measured_circuits: plan.n_circuits(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(shots: u64, grouping: GroupingMode) -> SamplingOptions {
        SamplingOptions {
            shots,
            grouping,
            ..SamplingOptions::default()
        }
    }

    #[test]
    fn identity_only_is_exact() {
        let s = PauliSum::from_text("3.25 III\n").unwrap();
        let sv = Statevector::basis_state(3, 5);
        for g in [GroupingMode::Abelian, GroupingMode::None] {
            assert_eq!(sample_energy(&s, &sv, &opts(1, g), 7).unwrap(), 3.25);
        }
    }

    #[test]
    fn diagonal_eigenstate_has_no_noise() {
        let s = PauliSum::from_text("1.0 II\n0.5 ZI\n-0.25 ZZ\n").unwrap();
        let sv = Statevector::basis_state(2, 0b01);
        let stats = repeat_sampling(&s, &sv, &opts(3, GroupingMode::None), 10, 1).unwrap();
        assert_eq!(stats.std, 0.0);
        assert!((stats.mean - (1.0 - 0.5 + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn rotated_bases_recover_expectation() {
        let s = PauliSum::from_text("0.3 XX\n-0.7 YY\n0.2 XZ\n1.1 ZY\n0.4 IX\n").unwrap();
        let amps: Vec<Complex64> = (0..4)
            .map(|i| Complex64::new(0.2 + 0.3 * i as f64, 0.1 * (i as f64 - 1.5)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let sv = Statevector::from_amplitudes(2, amps.into_iter().map(|a| a / norm).collect()).unwrap();
        let exact = s.expectation(sv.amplitudes());
        for g in [GroupingMode::Abelian, GroupingMode::None] {
            let plan = MeasurementPlan::new(&s, &sv, &opts(10, g)).unwrap();
            assert!((plan.exact() - exact).abs() < 1e-12, "{g}");
        }
    }

    #[test]
    fn large_shot_limit_converges() {
        let s = PauliSum::from_text("0.3 XX\n-0.7 YY\n0.5 ZI\n").unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sv = Statevector::from_amplitudes(
            2,
            vec![
                Complex64::new(h, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.5),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let exact = s.expectation(sv.amplitudes());
        let shots = 10_000_000;
        let est = sample_energy(&s, &sv, &opts(shots, GroupingMode::None), 3).unwrap();
        let sigma = (0.3f64.powi(2) + 0.7f64.powi(2) + 0.5f64.powi(2)).sqrt() / (shots as f64).sqrt();
        assert!((est - exact).abs() < 3.0 * sigma, "{est} vs {exact}");
    }

    #[test]
    fn validation_and_replay() {
        let s = PauliSum::from_text("1.0 XI\n").unwrap();
        let sv = Statevector::basis_state(2, 0);
        assert!(sample_energy(&s, &sv, &opts(0, GroupingMode::None), 0).is_err());
        assert!(repeat_sampling(&s, &sv, &opts(5, GroupingMode::None), 1, 0).is_err());
        let a = repeat_sampling(&s, &sv, &opts(100, GroupingMode::None), 20, 9).unwrap();
        let b = repeat_sampling(&s, &sv, &opts(100, GroupingMode::None), 20, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn multinomial_conserves_shots() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let probs = [0.1, 0.0, 0.25, 0.65];
        let counts = multinomial(1000, &probs, &mut rng);
        assert_eq!(counts.iter().map(|c| c.1).sum::<u64>(), 1000);
        assert!(counts.iter().all(|c| c.0 != 1));
    }
}
