//! Builds the ethylene model from explicit parameter tables and from the
//! shipped file, and prints the one-body matrix with the double-counting
//! correction applied.
//!
//! Usage: `cargo run --example model_hamiltonian [path/to/file.model]`

use nalgebra::{dmatrix, DMatrix};

use exhub::model::assemble_hamiltonian;
use exhub::{fixtures, InteractionVariant, ModelParameters};

fn main() -> exhub::Result<()> {
    // two π orbitals, hopping t, on-site U, inter-site V and exchange J (eV)
    let custom = ModelParameters::new(
        "toy-dimer",
        2,
        dmatrix![-1.0, -2.8; -2.8, -1.0],
        dmatrix![9.0, 5.5; 5.5, 9.0],
        dmatrix![0.0, 0.4; 0.4, 0.0],
        DMatrix::identity(2, 2),
        1.0,
        InteractionVariant::WithExchange,
    )?;
    let params = match std::env::args().nth(1) {
        Some(path) => ModelParameters::load(path)?,
        None => fixtures::ethylene(),
    };

    for p in [custom, params] {
        for variant in InteractionVariant::ALL {
            let ham = assemble_hamiltonian(&p.clone().with_variant(variant));
            println!(
                "{} ({variant}): K = {}, {} electrons, {} unique two-body integrals",
                p.name,
                ham.n_orbitals(),
                p.n_electrons,
                ham.two_body.n_unique()
            );
            println!("  one-body (eV):{}", ham.one_body);
        }
    }
    Ok(())
}
