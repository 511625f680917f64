//! Downfolded model parameters and the plain-text parameter file.
//!
//! ```text
//! [model]
//! name = "ethylene"
//! K = 2
//! n_electrons = 2
//! alpha = 1.0
//! variant = "with-exchange"
//!
//! [params]
//! # i j t U J D
//! 1 1 -3.820 10.442 - 1.000
//! 1 2 -2.874  6.376 0.161 0.948
//! 2 2 -3.820 10.442 - 1.000
//! ```
//!
//! Orbital indices are 1-based. Each unordered pair appears once; `J` may be
//! written as `-` or the column dropped entirely (five columns), both
//! meaning zero exchange.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// Which two-body interaction the model keeps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionVariant {
    /// Density-density Coulomb plus exchange and pair hopping ("Model 1").
    #[default]
    WithExchange,
    /// Density-density Coulomb only ("Model 2").
    CoulombOnly,
}

impl InteractionVariant {
    pub const ALL: [InteractionVariant; 2] = [InteractionVariant::WithExchange, InteractionVariant::CoulombOnly];

    pub fn as_str(self) -> &'static str {
        match self {
            InteractionVariant::WithExchange => "with-exchange",
            InteractionVariant::CoulombOnly => "coulomb-only",
        }
    }
}

impl fmt::Display for InteractionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InteractionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "with-exchange" | "withexchange" | "model1" | "model-1" => Ok(InteractionVariant::WithExchange),
            "coulomb-only" | "coulombonly" | "model2" | "model-2" => Ok(InteractionVariant::CoulombOnly),
            other => Err(Error::InvalidArgument(format!("unknown interaction variant {other:?}"))),
        }
    }
}

/// Symmetric K×K parameter tables of a downfolded extended-Hubbard model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParameters {
    pub name: String,
    pub n_electrons: usize,
    /// Hopping / effective one-electron integrals `t`, eV.
    pub hopping: DMatrix<f64>,
    /// Screened Coulomb `U`, eV.
    pub coulomb: DMatrix<f64>,
    /// Screened exchange `J`, eV. Zero diagonal.
    pub exchange: DMatrix<f64>,
    /// One-body density matrix `D` of the reference calculation.
    pub density: DMatrix<f64>,
    /// Weight of the on-site double-counting term, in `[0, 1]`.
    pub alpha: f64,
    pub variant: InteractionVariant,
}

impl ModelParameters {
    /// Validates and builds a parameter set. All tables must be K×K.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        n_electrons: usize,
        hopping: DMatrix<f64>,
        coulomb: DMatrix<f64>,
        exchange: DMatrix<f64>,
        density: DMatrix<f64>,
        alpha: f64,
        variant: InteractionVariant,
    ) -> Result<Self> {
        let params = ModelParameters {
            name: name.into(),
            n_electrons,
            hopping,
            coulomb,
            exchange,
            density,
            alpha,
            variant,
        };
        params.validate()?;
        Ok(params)
    }

    /// Number of spatial (Wannier) orbitals K.
    pub fn n_orbitals(&self) -> usize {
        self.hopping.nrows()
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_orbitals()
    }

    pub fn with_variant(mut self, variant: InteractionVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        self.alpha = alpha;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let k = self.hopping.nrows();
        if k == 0 {
            return Err(Error::InvalidParams("K must be at least 1".into()));
        }
        for (label, m) in [
            ("t", &self.hopping),
            ("U", &self.coulomb),
            ("J", &self.exchange),
            ("D", &self.density),
        ] {
            if m.nrows() != k || m.ncols() != k {
                return Err(Error::InvalidParams(format!(
                    "{label} is {}x{}, expected {k}x{k}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            for i in 0..k {
                for j in 0..i {
                    if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOL {
                        return Err(Error::InvalidParams(format!(
                            "{label} is not symmetric at ({}, {})",
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParams(format!("{label} has non-finite entries")));
            }
        }
        if let Some(v) = self.coulomb.iter().find(|&&v| v < 0.0) {
            return Err(Error::InvalidParams(format!("negative U entry {v}")));
        }
        if (0..k).any(|i| self.exchange[(i, i)] != 0.0) {
            return Err(Error::InvalidParams("J must have zero diagonal".into()));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParams(format!("alpha = {} outside [0, 1]", self.alpha)));
        }
        if self.n_electrons > 2 * k {
            return Err(Error::InvalidParams(format!(
                "{} electrons do not fit in {k} orbitals",
                self.n_electrons
            )));
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse()
    }
}

impl FromStr for ModelParameters {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        load_model_params(text)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Model,
    Params,
}

struct Row {
    line: usize,
    t: f64,
    u: f64,
    j: Option<f64>,
    d: f64,
}

/// Parses the parameter file format described at module level.
pub fn load_model_params(text: &str) -> Result<ModelParameters> {
    let mut section = Section::None;
    let mut name: Option<String> = None;
    let mut k: Option<usize> = None;
    let mut n_electrons: Option<usize> = None;
    let mut alpha: Option<f64> = None;
    let mut variant = InteractionVariant::WithExchange;
    let mut rows: Vec<(usize, usize, Row)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            section = match line {
                "[model]" => Section::Model,
                "[params]" => Section::Params,
                other => return Err(Error::parse(lineno, format!("unknown section {other}"))),
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(Error::parse(lineno, "content before the first section"));
            }
            Section::Model => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| Error::parse(lineno, "expected key = value"))?;
                let value = value.trim().trim_matches('"');
                match key.trim() {
                    "name" => name = Some(value.to_string()),
                    "K" | "k" | "n_orbitals" => k = Some(parse_num(value, lineno)?),
                    "n_electrons" => n_electrons = Some(parse_num(value, lineno)?),
                    "alpha" => alpha = Some(parse_num(value, lineno)?),
                    "variant" => {
                        variant = value
                            .parse()
                            .map_err(|_| Error::parse(lineno, format!("unknown variant {value:?}")))?
                    }
                    other => return Err(Error::parse(lineno, format!("unknown key {other:?}"))),
                }
            }
            Section::Params => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                let (i, j) = match fields.as_slice() {
                    [i, j, ..] => (parse_num::<usize>(i, lineno)?, parse_num::<usize>(j, lineno)?),
                    _ => return Err(Error::parse(lineno, "expected a parameter row")),
                };
                let row = match fields.len() {
                    6 => Row {
                        line: lineno,
                        t: parse_num(fields[2], lineno)?,
                        u: parse_num(fields[3], lineno)?,
                        j: match fields[4] {
                            "-" => None,
                            s => Some(parse_num(s, lineno)?),
                        },
                        d: parse_num(fields[5], lineno)?,
                    },
                    5 => Row {
                        line: lineno,
                        t: parse_num(fields[2], lineno)?,
                        u: parse_num(fields[3], lineno)?,
                        j: None,
                        d: parse_num(fields[4], lineno)?,
                    },
                    n => {
                        return Err(Error::parse(
                            lineno,
                            format!("expected 5 or 6 columns (i j t U [J] D), found {n}"),
                        ))
                    }
                };
                if i == 0 || j == 0 {
                    return Err(Error::parse(lineno, "orbital indices are 1-based"));
                }
                rows.push((i, j, row));
            }
        }
    }

    let name = name.unwrap_or_else(|| "unnamed".to_string());
    let k = k.ok_or_else(|| Error::parse(0, "missing K in [model]"))?;
    let n_electrons = n_electrons.ok_or_else(|| Error::parse(0, "missing n_electrons in [model]"))?;
    let alpha = alpha.unwrap_or(1.0);
    if k == 0 {
        return Err(Error::InvalidParams("K must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParams(format!("alpha = {alpha} outside [0, 1]")));
    }

    let mut seen: Vec<Option<usize>> = vec![None; k * k];
    let mut t = DMatrix::zeros(k, k);
    let mut u = DMatrix::zeros(k, k);
    let mut jx = DMatrix::zeros(k, k);
    let mut d = DMatrix::zeros(k, k);
    for (i, j, row) in &rows {
        let (i, j) = (*i - 1, *j - 1);
        if i >= k || j >= k {
            return Err(Error::parse(
                row.line,
                format!("orbital index ({}, {}) exceeds K = {k}", i + 1, j + 1),
            ));
        }
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let jv = row.j.unwrap_or(0.0);
        if a == b && jv != 0.0 {
            return Err(Error::parse(row.line, "J on the diagonal must be '-' or 0"));
        }
        if let Some(first) = seen[a * k + b] {
            let same = t[(a, b)] == row.t && u[(a, b)] == row.u && jx[(a, b)] == jv && d[(a, b)] == row.d;
            if !same {
                return Err(Error::parse(
                    row.line,
                    format!("entry ({}, {}) conflicts with line {first}", a + 1, b + 1),
                ));
            }
            continue;
        }
        seen[a * k + b] = Some(row.line);
        for (p, q) in [(a, b), (b, a)] {
            t[(p, q)] = row.t;
            u[(p, q)] = row.u;
            jx[(p, q)] = jv;
            d[(p, q)] = row.d;
        }
    }
    for a in 0..k {
        for b in a..k {
            if seen[a * k + b].is_none() {
                return Err(Error::InvalidParams(format!(
                    "missing parameter row ({}, {})",
                    a + 1,
                    b + 1
                )));
            }
        }
    }

    ModelParameters::new(name, n_electrons, t, u, jx, d, alpha, variant)
}

fn parse_num<T: FromStr>(s: &str, line: usize) -> Result<T> {
    // Accept the unicode minus sign that shows up in copied tables.
    let cleaned = s.replace('\u{2212}', "-");
    cleaned
        .parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ETHYLENE: &str = include_str!("../../models/ethylene.model");

    #[test]
    fn ethylene_table_values() {
        let p = load_model_params(ETHYLENE).unwrap();
        assert_eq!(p.n_orbitals(), 2);
        assert_eq!(p.n_electrons, 2);
        assert_eq!(p.hopping[(0, 0)], -3.820);
        assert_eq!(p.hopping[(0, 1)], -2.874);
        assert_eq!(p.hopping[(1, 0)], -2.874);
        assert_eq!(p.coulomb[(0, 0)], 10.442);
        assert_eq!(p.coulomb[(0, 1)], 6.376);
        assert_eq!(p.exchange[(0, 1)], 0.161);
        assert_eq!(p.exchange[(0, 0)], 0.0);
        assert_eq!(p.density[(0, 0)], 1.000);
        assert_eq!(p.density[(0, 1)], 0.948);
        assert_eq!(p.variant, InteractionVariant::WithExchange);
    }

    #[test]
    fn hexatriene_6o_has_21_rows() {
        let text = include_str!("../../models/hexatriene_6e6o.model");
        let rows = text
            .lines()
            .filter(|l| {
                let l = l.trim();
                !l.is_empty() && l.starts_with(|c: char| c.is_ascii_digit())
            })
            .count();
        assert_eq!(rows, 21);
        let p = load_model_params(text).unwrap();
        assert_eq!(p.n_orbitals(), 6);
        assert_eq!(p.coulomb[(3, 5)], 2.485);
        assert_eq!(p.density[(5, 3)], 0.178);
    }

    #[test]
    fn absent_exchange_is_zero() {
        let text = "[model]\nK = 1\nn_electrons = 2\n[params]\n1 1 -1.0 5.0 1.0\n";
        let p = load_model_params(text).unwrap();
        assert_eq!(p.exchange, DMatrix::zeros(1, 1));
        assert_eq!(p.density[(0, 0)], 1.0);
    }

    #[test]
    fn missing_pair_rejected() {
        let text = "[model]\nK = 2\nn_electrons = 2\n[params]\n1 1 -1 5 - 1\n2 2 -1 5 - 1\n";
        let err = load_model_params(text).unwrap_err();
        assert!(err.to_string().contains("missing parameter row (1, 2)"), "{err}");
    }

    #[test]
    fn conflicting_duplicate_rejected() {
        let text = "[model]\nK = 2\nn_electrons = 2\n[params]\n1 1 -1 5 - 1\n1 2 -2 3 0.1 0.5\n2 1 -2 3 0.2 0.5\n2 2 -1 5 - 1\n";
        assert!(matches!(load_model_params(text), Err(Error::Parse { line: 7, .. })));
        // identical mirror rows are fine
        let ok = text.replace("2 1 -2 3 0.2 0.5", "2 1 -2 3 0.1 0.5");
        assert!(load_model_params(&ok).is_ok());
    }

    #[test]
    fn alpha_out_of_range() {
        let text = ETHYLENE.replace("alpha = 1.0", "alpha = 1.5");
        assert!(matches!(load_model_params(&text), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn garbage_is_a_parse_error() {
        let text = ETHYLENE.replace("10.442", "ten");
        assert!(matches!(load_model_params(&text), Err(Error::Parse { .. })));
        assert!(matches!(load_model_params("K = 2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn negative_u_rejected() {
        let text = ETHYLENE.replace("6.376", "-6.376");
        assert!(matches!(load_model_params(&text), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn variant_names() {
        assert_eq!(
            "coulomb-only".parse::<InteractionVariant>().unwrap(),
            InteractionVariant::CoulombOnly
        );
        assert_eq!(
            "with_exchange".parse::<InteractionVariant>().unwrap(),
            InteractionVariant::WithExchange
        );
        assert!("hubbard".parse::<InteractionVariant>().is_err());
    }
}
