//! Pauli census of every shipped model: term count, L¹-norm, number of
//! qubit-wise commuting measurement groups, and the sampling and qDRIFT cost
//! estimates that follow from λ at chemical precision.

use exhub::model::assemble_hamiltonian;
use exhub::qubit::{
    abelian_group_with, jordan_wigner, l1_norm, l1_norm_ev, measurement_bound, qdrift_cost, term_count,
    GroupingStrategy,
};
use exhub::units::hartree_to_ev;
use exhub::{fixtures, InteractionVariant};

/// Chemical precision, hartree.
const EPSILON: f64 = 1.6e-3;

fn main() -> exhub::Result<()> {
    println!(
        "{:<16} {:<14} {:>6} {:>9} {:>7} {:>7} {:>12} {:>12}",
        "molecule", "variant", "N_term", "λ (Ha)", "groups", "LDF", "M bound", "qDRIFT"
    );
    for params in fixtures::all() {
        for variant in InteractionVariant::ALL {
            let psum = jordan_wigner(&assemble_hamiltonian(&params.clone().with_variant(variant)));
            let first_fit = abelian_group_with(&psum, GroupingStrategy::FirstFit);
            let ldf = abelian_group_with(&psum, GroupingStrategy::LargestDegreeFirst);
            assert!(first_fit.is_valid() && ldf.is_valid());
            let bound = measurement_bound(&psum, hartree_to_ev(EPSILON))?;
            println!(
                "{:<16} {:<14} {:>6} {:>9.3} {:>7} {:>7} {:>12.3e} {:>12}",
                params.name,
                variant,
                term_count(&psum),
                l1_norm(&psum),
                first_fit.len(),
                ldf.len(),
                bound.m_bound,
                qdrift_cost(l1_norm(&psum), EPSILON)?
            );
            debug_assert!((l1_norm_ev(&psum) - hartree_to_ev(l1_norm(&psum))).abs() < 1e-9);
        }
    }

    // the ethylene Coulomb-only Hamiltonian is small enough to list in full
    let psum = jordan_wigner(&assemble_hamiltonian(
        &fixtures::ethylene().with_variant(InteractionVariant::CoulombOnly),
    ));
    println!("\nethylene coulomb-only, eV:\n{}", psum.to_text());
    Ok(())
}
