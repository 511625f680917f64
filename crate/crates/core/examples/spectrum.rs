//! Exact 1Bu / 2Ag excitation energies of every shipped molecule, with the
//! leading CI coefficients of each labeled state in the SCF orbital basis.

use exhub::exact::{solve_spectrum, StateLabel, DISPLAY_CUTOFF};
use exhub::model::assemble_hamiltonian;
use exhub::{fixtures, InteractionVariant};

fn main() -> exhub::Result<()> {
    for params in fixtures::all() {
        for variant in InteractionVariant::ALL {
            let params = params.clone().with_variant(variant);
            let ham = assemble_hamiltonian(&params);
            let spectrum = solve_spectrum(&ham, params.n_electrons)?;
            let e = spectrum.excitation_energies()?;
            println!(
                "{:<16} {:<14} 1Bu {:6.3} eV   2Ag {:6.3} eV",
                params.name, variant, e.b_u, e.a_g
            );
            for label in [StateLabel::GroundAg, StateLabel::Bu, StateLabel::SecondAg] {
                let state = spectrum.table.by_label(label).expect("labeled").leading(DISPLAY_CUTOFF);
                let terms: Vec<String> = state
                    .coefficients
                    .iter()
                    .map(|c| format!("{:+.3}|{}⟩", c.value, c.occupation))
                    .collect();
                println!("    {label:<4} {}", terms.join("  "));
            }
        }
    }
    Ok(())
}
