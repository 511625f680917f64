//! VQD for the three lowest singlets of butadiene followed by repeated
//! 10⁴-shot energy estimation, with and without Abelian grouping.
//!
//! Usage: `cargo run --release --example vqd_sampling [molecule] [variant] [repeats]`

use std::time::Instant;

use exhub::model::assemble_hamiltonian;
use exhub::vqd::{vqd_sample, GroupingMode, VqdSampleConfig};
use exhub::{fixtures, InteractionVariant};

fn main() -> exhub::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let name = args.get(1).map_or("butadiene", String::as_str);
    let variant: InteractionVariant = args
        .get(2)
        .map_or(Ok(InteractionVariant::WithExchange), |s| s.parse())?;
    let repeats: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let params = fixtures::by_name(name)
        .ok_or_else(|| exhub::Error::InvalidArgument(format!("unknown molecule {name}")))?
        .with_variant(variant);
    let ham = assemble_hamiltonian(&params);

    for grouping in [GroupingMode::Abelian, GroupingMode::None] {
        let mut config = VqdSampleConfig {
            repeats,
            ..VqdSampleConfig::default()
        };
        config.sampling.grouping = grouping;
        let start = Instant::now();
        let (_, report) = vqd_sample(&ham, params.n_electrons, &config)?;
        println!(
            "{} {variant} grouping={grouping} ({} circuits, {:.1?})",
            params.name,
            report.measured_circuits,
            start.elapsed()
        );
        for s in &report.states {
            println!(
                "  {}  sampled {:6.3} ± {:.3}   vqd {:6.3}   exact {:6.3}   <S²> {:.1e}{}",
                s.label,
                s.mean,
                s.std,
                s.vqd_excitation,
                s.exact_excitation,
                s.s_squared,
                if s.converged { "" } else { "  (not converged)" }
            );
        }
    }
    Ok(())
}
