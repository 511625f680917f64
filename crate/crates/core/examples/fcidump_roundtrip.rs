//! Writes the butadiene Hamiltonian as FCIDUMP, reads it back, and checks
//! that the exact spectrum survives the round trip.
//!
//! Usage: `cargo run --example fcidump_roundtrip [output.fcidump]`

use std::io::BufReader;

use exhub::exact::{solve_spectrum, ExcitationEnergies};
use exhub::fixtures;
use exhub::model::{assemble_hamiltonian, export_fcidump, read_fcidump};

fn main() -> exhub::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        std::env::temp_dir()
            .join("butadiene.fcidump")
            .to_string_lossy()
            .into_owned()
    });
    let params = fixtures::butadiene();
    let ham = assemble_hamiltonian(&params);
    export_fcidump(&ham, params.n_electrons, &path)?;
    println!("wrote {path}");

    let file = std::fs::File::open(&path).map_err(|e| exhub::Error::io(&path, e))?;
    let dump = read_fcidump(BufReader::new(file))?;
    println!(
        "read back NORB={} NELEC={} MS2={}",
        dump.hamiltonian.n_orbitals(),
        dump.n_electrons,
        dump.ms2
    );

    let show = |tag: &str, e: ExcitationEnergies| println!("{tag:<10} 1Bu {:.6} eV   2Ag {:.6} eV", e.b_u, e.a_g);
    show(
        "original",
        solve_spectrum(&ham, params.n_electrons)?.excitation_energies()?,
    );
    show(
        "restored",
        solve_spectrum(&dump.hamiltonian, dump.n_electrons)?.excitation_energies()?,
    );
    Ok(())
}
