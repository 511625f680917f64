//! Band-count extrapolation `f(N) = ΔE_∞ + b·exp(−N/c)` fitted by
//! Levenberg–Marquardt least squares.

use std::path::Path;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FIT_MIN_POINTS: usize = 4;
pub const FIT_STEP_TOL: f64 = 1e-10;
pub const FIT_MAX_ITERATIONS: usize = 2000;
const DAMPING_INIT: f64 = 1e-3;
const DAMPING_FACTOR: f64 = 10.0;

/// `(N_band, ΔE)` samples of one excitation energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    n_band: f64,
    delta_e_ev: f64,
}

impl BandSeries {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < FIT_MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "a three-parameter fit needs at least {FIT_MIN_POINTS} points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|(n, e)| !n.is_finite() || !e.is_finite()) {
            return Err(Error::InvalidArgument("non-finite value in series".into()));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidArgument("N_band must be strictly increasing".into()));
        }
        Ok(BandSeries {
            label: label.into(),
            points,
        })
    }

    /// Parses CSV with the header `n_band,delta_e_ev`.
    pub fn from_csv(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut points = Vec::new();
        for (i, row) in reader.deserialize::<CsvRow>().enumerate() {
            let row = row.map_err(|e| Error::parse(i + 2, e.to_string()))?;
            points.push((row.n_band, row.delta_e_ev));
        }
        BandSeries::new(label, points)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let label = path
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        BandSeries::from_csv(label, &text)
    }

    fn span(&self) -> f64 {
        self.points[self.points.len() - 1].0 - self.points[0].0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub delta_e_inf: f64,
    pub b: f64,
    pub c: f64,
    pub residual_rms: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// `ΔE_∞ + b·exp(−n/c)`.
pub fn evaluate_fit(fit: &FitResult, n: f64) -> Result<f64> {
    if !fit.c.is_finite() || fit.c <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "decay constant must be positive, got {}",
            fit.c
        )));
    }
    Ok(fit.delta_e_inf + fit.b * (-n / fit.c).exp())
}

fn residuals(series: &BandSeries, p: &Vector3<f64>) -> Vec<f64> {
    series
        .points
        .iter()
        .map(|&(n, y)| p[0] + p[1] * (-n / p[2]).exp() - y)
        .collect()
}

fn sum_sq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Damped Gauss–Newton with Marquardt diagonal scaling; steps that would
/// make `c` non-positive or raise the cost are rejected.
fn levenberg_marquardt(series: &BandSeries, start: Vector3<f64>) -> (Vector3<f64>, f64, bool, usize) {
    let mut p = start;
    let mut r = residuals(series, &p);
    let mut cost = sum_sq(&r);
    let mut nu = DAMPING_INIT;
    for iteration in 1..=FIT_MAX_ITERATIONS {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for (&(n, _), ri) in series.points.iter().zip(&r) {
            let e = (-n / p[2]).exp();
            let row = Vector3::new(1.0, e, p[1] * e * n / (p[2] * p[2]));
            jtj += row * row.transpose();
            jtr += row * *ri;
        }
        let mut step_taken = false;
        while nu < 1e16 {
            let mut a = jtj;
            for i in 0..3 {
                a[(i, i)] += nu * jtj[(i, i)].max(f64::MIN_POSITIVE);
            }
            let Some(delta) = a.lu().solve(&(-jtr)) else {
                nu *= DAMPING_FACTOR;
                continue;
            };
            let trial = p + delta;
            if trial[2] > 0.0 {
                let rt = residuals(series, &trial);
                let ct = sum_sq(&rt);
                if ct <= cost {
                    let small = delta.norm() < FIT_STEP_TOL * (1.0 + p.norm());
                    p = trial;
                    r = rt;
                    cost = ct;
                    nu /= DAMPING_FACTOR;
                    step_taken = true;
                    if small {
                        return (p, cost, true, iteration);
                    }
                    break;
                }
            }
            nu *= DAMPING_FACTOR;
        }
        if !step_taken {
            // no descent direction left at any damping: a stationary point
            return (p, cost, true, iteration);
        }
    }
    (p, cost, false, FIT_MAX_ITERATIONS)
}

/// Multi-start fit over `c ∈ {span/10, span/3, span}` with `b` and `ΔE_∞`
/// initialized from the endpoint difference.
pub fn fit_band_extrapolation(series: &BandSeries) -> Result<FitResult> {
    let n = series.points.len() as f64;
    let (n0, y0) = series.points[0];
    let (n1, y1) = series.points[series.points.len() - 1];
    let span = series.span();
    if series.points.iter().all(|&(_, y)| y == y0) {
        return Ok(FitResult {
            delta_e_inf: y0,
            b: 0.0,
            c: span,
            residual_rms: 0.0,
            converged: true,
            iterations: 0,
        });
    }
    let mut best: Option<(Vector3<f64>, f64, bool, usize)> = None;
    for c0 in [span / 10.0, span / 3.0, span] {
        let (e0, e1) = ((-n0 / c0).exp(), (-n1 / c0).exp());
        let b0 = if e0 != e1 { (y0 - y1) / (e0 - e1) } else { 0.0 };
        let start = Vector3::new(y1 - b0 * e1, b0, c0);
        let run = levenberg_marquardt(series, start);
        if best.as_ref().is_none_or(|b| run.1 < b.1) {
            best = Some(run);
        }
    }
    let (p, cost, converged, iterations) = best.expect("three starts");
    Ok(FitResult {
        delta_e_inf: p[0],
        b: p[1],
        c: p[2],
        residual_rms: (cost / n).sqrt(),
        converged,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(e: f64, b: f64, c: f64, ns: impl Iterator<Item = f64>) -> BandSeries {
        BandSeries::new("synthetic", ns.map(|n| (n, e + b * (-n / c).exp())).collect()).unwrap()
    }

    #[test]
    fn closed_form_values() {
        let fit = FitResult {
            delta_e_inf: 7.76,
            b: 1.0,
            c: 100.0,
            residual_rms: 0.0,
            converged: true,
            iterations: 0,
        };
        assert!((evaluate_fit(&fit, 100.0).unwrap() - (7.76 + (-1.0f64).exp())).abs() < 1e-15);
        assert!((evaluate_fit(&fit, 1e6).unwrap() - 7.76).abs() < 1e-9);
        let flat = FitResult { b: 0.0, ..fit };
        assert_eq!(evaluate_fit(&flat, 3.0).unwrap(), 7.76);
        assert!(evaluate_fit(&FitResult { c: 0.0, ..fit }, 1.0).is_err());
    }

    #[test]
    fn recovers_exact_parameters() {
        let s = synthetic(7.76, 2.0, 150.0, (1..=12).map(|i| 50.0 * i as f64));
        let f = fit_band_extrapolation(&s).unwrap();
        assert!(f.converged);
        assert!((f.delta_e_inf - 7.76).abs() < 1e-6, "{f:?}");
        assert!((f.b - 2.0).abs() < 1e-6, "{f:?}");
        assert!((f.c - 150.0).abs() < 1e-6, "{f:?}");
    }

    #[test]
    fn constant_series() {
        let s = BandSeries::new("flat", (1..=5).map(|i| (i as f64 * 10.0, 5.0)).collect()).unwrap();
        let f = fit_band_extrapolation(&s).unwrap();
        assert_eq!((f.delta_e_inf, f.b), (5.0, 0.0));
    }

    #[test]
    fn csv_parsing_and_validation() {
        let s = BandSeries::from_csv("x", "n_band,delta_e_ev\n10,8.0\n20, 7.9\n30,7.85\n40,7.82\n").unwrap();
        assert_eq!(s.points[1], (20.0, 7.9));
        assert!(BandSeries::from_csv("x", "n_band,delta_e_ev\n10,8.0\n20,7.9\n30,7.85\n").is_err());
        assert!(BandSeries::from_csv("x", "n_band,delta_e_ev\n10,8.0\n20,abc\n30,7.85\n40,7.8\n").is_err());
        assert!(BandSeries::new("x", vec![(1.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0)]).is_err());
    }
}
