//! Extrapolates an excitation energy to infinitely many bands with
//! `ΔE(N) = ΔE_∞ + b·exp(−N/c)`, either from a CSV file (`n_band,delta_e_ev`)
//! or from a built-in synthetic series with a little noise.
//!
//! Usage: `cargo run --example band_fit [series.csv]`

use exhub::fit::{evaluate_fit, fit_band_extrapolation, BandSeries};

fn main() -> exhub::Result<()> {
    let series = match std::env::args().nth(1) {
        Some(path) => BandSeries::load(path)?,
        None => {
            let noise = [0.003, -0.002, 0.001, -0.003, 0.002, 0.0, -0.001, 0.002];
            let points = (0..8)
                .zip(noise)
                .map(|(i, eps)| {
                    let n = 40.0 + 40.0 * i as f64;
                    (n, 5.47 + 0.6 * (-n / 70.0f64).exp() + eps)
                })
                .collect();
            BandSeries::new("synthetic 1Bu", points)?
        }
    };
    let fit = fit_band_extrapolation(&series)?;
    println!(
        "{}: ΔE_∞ = {:.4} eV, b = {:.4} eV, c = {:.2} bands (rms {:.1e}, {} iterations)",
        series.label, fit.delta_e_inf, fit.b, fit.c, fit.residual_rms, fit.iterations
    );
    for &(n, e) in &series.points {
        println!("  N = {n:5.0}   ΔE = {e:.4}   fit = {:.4}", evaluate_fit(&fit, n)?);
    }
    let &(_, last) = series.points.last().expect("non-empty series");
    println!(
        "gap to the plateau at the largest N: {:.4} eV",
        (last - fit.delta_e_inf).abs()
    );
    Ok(())
}
