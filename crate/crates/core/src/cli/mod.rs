//! Command implementations behind the `exhub` binary. Each command returns
//! a JSON report embedding the tool version, the SHA-256 of its input file
//! and the full effective configuration, so identical inputs give
//! byte-identical output.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{solve_spectrum, ExcitationEnergies, StateCharacter, StateLabel};
use crate::fit::{evaluate_fit, fit_band_extrapolation, BandSeries, FitResult};
use crate::model::{assemble_hamiltonian, load_model_params, write_fcidump, InteractionVariant, ModelParameters};
use crate::qubit::{abelian_group, jordan_wigner, l1_norm, l1_norm_ev, measurement_bound, qdrift_cost, term_count};
use crate::units::hartree_to_ev;
use crate::vqd::{vqd_sample, SamplingReport, VqdSampleConfig};

pub const TOOL: &str = "exhub";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 42;
/// Target precision for the resource estimates in `norm` (hartree).
pub const DEFAULT_EPSILON_HARTREE: f64 = 1.6e-3;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumConfig {
    pub model: PathBuf,
    /// `None` runs both interaction variants.
    pub variant: Option<InteractionVariant>,
    /// Smallest |coefficient| listed per state.
    pub cutoff: f64,
    pub fcidump: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormConfig {
    pub model: PathBuf,
    pub variant: Option<InteractionVariant>,
    pub epsilon_hartree: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VqdSampleRun {
    pub model: PathBuf,
    pub variant: InteractionVariant,
    pub run: VqdSampleConfig,
}

#[derive(Debug, Clone, Serialize)]
pub struct FitConfig {
    pub csv: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportConfig {
    pub model: PathBuf,
    pub variant: InteractionVariant,
    pub out: PathBuf,
}

/// One fully resolved command invocation.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    Spectrum(SpectrumConfig),
    Norm(NormConfig),
    VqdSample(VqdSampleRun),
    Fit(FitConfig),
    ExportFcidump(ExportConfig),
}

#[derive(Debug, Serialize)]
struct InputInfo<'a> {
    path: &'a Path,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Report<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    input: InputInfo<'a>,
    config: &'a RunConfig,
    result: T,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads the input file, returning its text and hash.
fn read_input(path: &Path) -> Result<(String, String)> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let hash = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::parse(0, "input is not valid UTF-8"))?;
    Ok((text, hash))
}

fn variants(v: Option<InteractionVariant>) -> Vec<InteractionVariant> {
    v.map_or_else(|| InteractionVariant::ALL.to_vec(), |v| vec![v])
}

fn render<T: Serialize>(config: &RunConfig, path: &Path, sha256: String, result: T) -> Result<String> {
    let report = Report {
        tool: TOOL,
        version: VERSION,
        input: InputInfo { path, sha256 },
        config,
        result,
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    Ok(text)
}

#[derive(Debug, Serialize)]
struct SpectrumResult {
    variant: InteractionVariant,
    n_electrons: usize,
    scf_energy: f64,
    scf_iterations: usize,
    excitation_energies: ExcitationEnergies,
    states: Vec<StateCharacter>,
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<String> {
    let RunConfig::Spectrum(c) = config else {
        return Err(Error::InvalidArgument(
            "spectrum called with another command's config".into(),
        ));
    };
    let (text, hash) = read_input(&c.model)?;
    let params = load_model_params(&text)?;
    if c.fcidump.is_some() && c.variant.is_none() {
        return Err(Error::InvalidArgument("--fcidump needs an explicit --variant".into()));
    }
    let mut results = Vec::new();
    for variant in variants(c.variant) {
        let p = params.clone().with_variant(variant);
        let ham = assemble_hamiltonian(&p);
        if let Some(path) = &c.fcidump {
            write_fcidump_file(&p, path)?;
        }
        let spectrum = solve_spectrum(&ham, p.n_electrons)?;
        let states = [StateLabel::GroundAg, StateLabel::Bu, StateLabel::SecondAg]
            .iter()
            .filter_map(|&l| spectrum.table.by_label(l))
            .map(|s| s.leading(c.cutoff))
            .collect();
        results.push(SpectrumResult {
            variant,
            n_electrons: p.n_electrons,
            scf_energy: spectrum.scf.energy,
            scf_iterations: spectrum.scf.iterations,
            excitation_energies: spectrum.excitation_energies()?,
            states,
        });
    }
    render(config, &c.model, hash, results)
}

#[derive(Debug, Serialize)]
struct NormResult {
    variant: InteractionVariant,
    n_qubits: usize,
    n_terms: usize,
    lambda_hartree: f64,
    lambda_ev: f64,
    abelian_groups: usize,
    measurement_bound: f64,
    qdrift_channels: u64,
}

pub fn cmd_norm(config: &RunConfig) -> Result<String> {
    let RunConfig::Norm(c) = config else {
        return Err(Error::InvalidArgument(
            "norm called with another command's config".into(),
        ));
    };
    let (text, hash) = read_input(&c.model)?;
    let params = load_model_params(&text)?;
    let mut results = Vec::new();
    for variant in variants(c.variant) {
        let psum = jordan_wigner(&assemble_hamiltonian(&params.clone().with_variant(variant)));
        let lambda = l1_norm(&psum);
        results.push(NormResult {
            variant,
            n_qubits: psum.n_qubits(),
            n_terms: term_count(&psum),
            lambda_hartree: lambda,
            lambda_ev: l1_norm_ev(&psum),
            abelian_groups: abelian_group(&psum).len(),
            measurement_bound: measurement_bound(&psum, hartree_to_ev(c.epsilon_hartree))?.m_bound,
            qdrift_channels: qdrift_cost(lambda, c.epsilon_hartree)?,
        });
    }
    render(config, &c.model, hash, results)
}

#[derive(Debug, Serialize)]
struct VqdStateSummary {
    label: String,
    energy: f64,
    s_squared: f64,
    overlaps: Vec<f64>,
    iterations: u64,
    converged: bool,
    parameters: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct VqdSampleResult {
    all_converged: bool,
    betas: Vec<f64>,
    sampling: SamplingReport,
    vqd: Vec<VqdStateSummary>,
}

pub fn cmd_vqd_sample(config: &RunConfig) -> Result<String> {
    let RunConfig::VqdSample(c) = config else {
        return Err(Error::InvalidArgument(
            "vqd-sample called with another command's config".into(),
        ));
    };
    let (text, hash) = read_input(&c.model)?;
    let params = load_model_params(&text)?.with_variant(c.variant);
    let (vqd, sampling) = vqd_sample(&assemble_hamiltonian(&params), params.n_electrons, &c.run)?;
    let states: Vec<VqdStateSummary> = vqd
        .states
        .into_iter()
        .enumerate()
        .map(|(i, s)| VqdStateSummary {
            label: format!("S{i}"),
            energy: s.energy,
            s_squared: s.s_squared,
            overlaps: s.overlaps,
            iterations: s.iterations,
            converged: s.converged,
            parameters: s.parameters,
        })
        .collect();
    let result = VqdSampleResult {
        all_converged: states.iter().all(|s| s.converged),
        betas: vqd.betas,
        sampling,
        vqd: states,
    };
    render(config, &c.model, hash, result)
}

#[derive(Debug, Serialize)]
struct FitReport {
    label: String,
    n_points: usize,
    fit: FitResult,
    /// `|f(N_max) − ΔE_∞|` (eV).
    plateau_gap: f64,
}

pub fn cmd_fit(config: &RunConfig) -> Result<String> {
    let RunConfig::Fit(c) = config else {
        return Err(Error::InvalidArgument(
            "fit called with another command's config".into(),
        ));
    };
    let (text, hash) = read_input(&c.csv)?;
    let label = c
        .csv
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let series = BandSeries::from_csv(label, &text)?;
    let fit = fit_band_extrapolation(&series)?;
    let n_max = series.points[series.points.len() - 1].0;
    let plateau_gap = (evaluate_fit(&fit, n_max)? - fit.delta_e_inf).abs();
    render(
        config,
        &c.csv,
        hash,
        FitReport {
            label: series.label,
            n_points: series.points.len(),
            fit,
            plateau_gap,
        },
    )
}

fn write_fcidump_file(params: &ModelParameters, path: &Path) -> Result<usize> {
    let mut buf = Vec::new();
    write_fcidump(&assemble_hamiltonian(params), params.n_electrons, &mut buf).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, &buf).map_err(|e| Error::io(path, e))?;
    Ok(buf.iter().filter(|&&b| b == b'\n').count())
}

#[derive(Debug, Serialize)]
struct ExportResult<'a> {
    fcidump: &'a Path,
    lines: usize,
}

pub fn cmd_export_fcidump(config: &RunConfig) -> Result<String> {
    let RunConfig::ExportFcidump(c) = config else {
        return Err(Error::InvalidArgument(
            "export-fcidump called with another command's config".into(),
        ));
    };
    let (text, hash) = read_input(&c.model)?;
    let params = load_model_params(&text)?.with_variant(c.variant);
    let lines = write_fcidump_file(&params, &c.out)?;
    render(config, &c.model, hash, ExportResult { fcidump: &c.out, lines })
}

/// Dispatches to the matching `cmd_*` function.
pub fn run(config: &RunConfig) -> Result<String> {
    match config {
        RunConfig::Spectrum(_) => cmd_spectrum(config),
        RunConfig::Norm(_) => cmd_norm(config),
        RunConfig::VqdSample(_) => cmd_vqd_sample(config),
        RunConfig::Fit(_) => cmd_fit(config),
        RunConfig::ExportFcidump(_) => cmd_export_fcidump(config),
    }
}

/// Process exit status for a failed command: 2 for input errors, 3 for
/// numerical failures.
pub fn exit_code(error: &Error) -> i32 {
    if error.is_input_error() {
        2
    } else {
        3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
