use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use exhub::cli::{self, ExportConfig, FitConfig, NormConfig, RunConfig, SpectrumConfig, VqdSampleRun};
use exhub::exact::DISPLAY_CUTOFF;
use exhub::vqd::{GroupingMode, OrbitalBasis, VqdSampleConfig};
use exhub::InteractionVariant;

#[derive(Parser)]
#[command(name = "exhub", version, about = "Extended-Hubbard models of small molecules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModelArgs {
    /// Model parameter file.
    model: PathBuf,
    /// Interaction variant: with-exchange or coulomb-only.
    #[arg(long)]
    variant: Option<InteractionVariant>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact excitation energies and CI characterization.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Smallest |CI coefficient| listed per state.
        #[arg(long, default_value_t = DISPLAY_CUTOFF)]
        cutoff: f64,
        /// Also write the Hamiltonian as FCIDUMP (requires --variant).
        #[arg(long)]
        fcidump: Option<PathBuf>,
    },
    /// Pauli term count, L1-norm and derived resource estimates.
    Norm {
        #[command(flatten)]
        model: ModelArgs,
        /// Target precision in hartree.
        #[arg(long, default_value_t = cli::DEFAULT_EPSILON_HARTREE)]
        epsilon: f64,
    },
    /// VQD for the lowest singlets, then repeated shot sampling.
    VqdSample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = cli::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 1000)]
        repeats: usize,
        /// abelian or none.
        #[arg(long, default_value_t = GroupingMode::Abelian)]
        grouping: GroupingMode,
        /// Brick-wall sublayers (default 4K).
        #[arg(long)]
        layers: Option<usize>,
        #[arg(long, default_value_t = 3)]
        n_states: usize,
        /// Random starts per state.
        #[arg(long)]
        restarts: Option<usize>,
        /// Orbital basis of the qubit Hamiltonian: wannier or scf.
        #[arg(long, default_value = "wannier")]
        basis: OrbitalBasis,
    },
    /// Fit ΔE(N_band) = ΔE_inf + b·exp(−N_band/c) to a CSV series.
    Fit {
        /// CSV with header n_band,delta_e_ev.
        csv: PathBuf,
    },
    /// Write the model Hamiltonian as FCIDUMP (path given by --fcidump or --out).
    ExportFcidump {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        fcidump: Option<PathBuf>,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, exhub::Error> {
    Ok(match &cli.command {
        Command::Spectrum { model, cutoff, fcidump } => RunConfig::Spectrum(SpectrumConfig {
            model: model.model.clone(),
            variant: model.variant,
            cutoff: *cutoff,
            fcidump: fcidump.clone(),
        }),
        Command::Norm { model, epsilon } => RunConfig::Norm(NormConfig {
            model: model.model.clone(),
            variant: model.variant,
            epsilon_hartree: *epsilon,
        }),
        Command::VqdSample {
            model,
            seed,
            shots,
            repeats,
            grouping,
            layers,
            n_states,
            restarts,
            basis,
        } => {
            let mut run = VqdSampleConfig {
                n_states: *n_states,
                layers: *layers,
                basis: *basis,
                repeats: *repeats,
                seed: *seed,
                ..VqdSampleConfig::default()
            };
            run.sampling.shots = *shots;
            run.sampling.grouping = *grouping;
            if let Some(r) = restarts {
                run.vqd.restarts = *r;
            }
            RunConfig::VqdSample(VqdSampleRun {
                model: model.model.clone(),
                variant: model.variant.unwrap_or_default(),
                run,
            })
        }
        Command::Fit { csv } => RunConfig::Fit(FitConfig { csv: csv.clone() }),
        Command::ExportFcidump { model, fcidump } => {
            let out = fcidump
                .clone()
                .or_else(|| cli.out.clone())
                .ok_or_else(|| exhub::Error::InvalidArgument("export-fcidump needs --fcidump or --out".into()))?;
            RunConfig::ExportFcidump(ExportConfig {
                model: model.model.clone(),
                variant: model.variant.unwrap_or_default(),
                out,
            })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(&cli).and_then(|c| {
        let report = cli::run(&c)?;
        // export-fcidump uses --out for the FCIDUMP itself when --fcidump is absent
        let report_path = match (&cli.command, &cli.out) {
            (Command::ExportFcidump { fcidump: None, .. }, _) => None,
            (_, out) => out.as_ref(),
        };
        match report_path {
            Some(path) => std::fs::write(path, &report).map_err(|e| exhub::Error::Io {
                path: path.clone(),
                source: e,
            }),
            None => {
                print!("{report}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
