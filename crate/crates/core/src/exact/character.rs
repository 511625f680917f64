//! CI-coefficient characterization of eigenstates and polyene state labels.

use std::fmt;

use serde::{Serialize, Serializer};

use super::eigen::EigenReport;
use super::sector::{occupation_string, SectorBasis};
use crate::error::{Error, Result};

/// Coefficients must exceed this magnitude to support a label.
pub const LABEL_MIN_COEFFICIENT: f64 = 0.3;
/// States with `⟨S²⟩` below this are treated as singlets.
pub const SINGLET_S2_THRESHOLD: f64 = 0.1;
/// Default display cutoff for leading coefficients.
pub const DISPLAY_CUTOFF: f64 = 0.09;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateLabel {
    /// Ground singlet dominated by the closed-shell reference.
    GroundAg,
    /// Lowest singlet dominated by an antisymmetric pair of spin-partner
    /// single excitations.
    Bu,
    /// Lowest singlet dominated by a closed-shell double excitation.
    SecondAg,
    Other,
}

impl StateLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StateLabel::GroundAg => "1Ag",
            StateLabel::Bu => "1Bu",
            StateLabel::SecondAg => "2Ag",
            StateLabel::Other => "other",
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for StateLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coefficient {
    pub value: f64,
    pub occupation: String,
    #[serde(skip)]
    pub determinant: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateCharacter {
    /// Position in the ascending sector spectrum.
    pub root: usize,
    pub energy: f64,
    pub s_squared: f64,
    pub label: StateLabel,
    /// Every determinant, sorted by descending |coefficient|; the global
    /// phase makes the first one positive.
    pub coefficients: Vec<Coefficient>,
}

impl StateCharacter {
    pub fn is_singlet(&self) -> bool {
        self.s_squared < SINGLET_S2_THRESHOLD
    }

    /// Coefficient on the given occupation string (0 when absent).
    pub fn coefficient(&self, occupation: &str) -> f64 {
        self.coefficients
            .iter()
            .find(|c| c.occupation == occupation)
            .map_or(0.0, |c| c.value)
    }

    pub fn norm_squared(&self) -> f64 {
        self.coefficients.iter().map(|c| c.value * c.value).sum()
    }

    /// Copy keeping only coefficients with `|d| ≥ cutoff`.
    pub fn leading(&self, cutoff: f64) -> StateCharacter {
        StateCharacter {
            coefficients: self
                .coefficients
                .iter()
                .filter(|c| c.value.abs() >= cutoff)
                .cloned()
                .collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub states: Vec<StateCharacter>,
}

impl CharacterTable {
    pub fn by_label(&self, label: StateLabel) -> Option<&StateCharacter> {
        self.states.iter().find(|s| s.label == label)
    }
}

/// How a determinant differs from the closed-shell reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Excitation {
    Reference,
    /// `i → a` in one spin channel.
    Single {
        from: usize,
        to: usize,
        spin: usize,
    },
    /// `i² → a²`.
    ClosedDouble,
    Other,
}

fn classify(det: u64, reference: u64, basis: &SectorBasis) -> Excitation {
    let holes = reference & !det;
    let particles = det & !reference;
    let k = basis.n_orbitals;
    let os = |bits: u64| basis.ordering.orbital_spin(bits.trailing_zeros() as usize, k);
    match (holes.count_ones(), particles.count_ones()) {
        (0, 0) => Excitation::Reference,
        (1, 1) => {
            let (from, s1) = os(holes);
            let (to, s2) = os(particles);
            if s1 == s2 {
                Excitation::Single { from, to, spin: s1 }
            } else {
                Excitation::Other
            }
        }
        (2, 2) => {
            let (h1, _) = os(holes);
            let (h2, _) = os(holes & (holes - 1));
            let (p1, _) = os(particles);
            let (p2, _) = os(particles & (particles - 1));
            if h1 == h2 && p1 == p2 {
                Excitation::ClosedDouble
            } else {
                Excitation::Other
            }
        }
        _ => Excitation::Other,
    }
}

fn coefficients_of(state: &[f64], basis: &SectorBasis) -> Vec<Coefficient> {
    let n_modes = basis.n_modes();
    let mut coefs: Vec<Coefficient> = state
        .iter()
        .zip(&basis.determinants)
        .map(|(&value, &det)| Coefficient {
            value,
            occupation: occupation_string(det, n_modes),
            determinant: det,
        })
        .collect();
    coefs.sort_by(|a, b| {
        b.value
            .abs()
            .total_cmp(&a.value.abs())
            .then(a.determinant.cmp(&b.determinant))
    });
    if coefs.first().is_some_and(|c| c.value < 0.0) {
        for c in &mut coefs {
            c.value = -c.value;
        }
    }
    coefs
}

fn is_bu_pattern(c: &[Coefficient], reference: u64, basis: &SectorBasis) -> bool {
    let [a, b, ..] = c else { return false };
    if b.value.abs() < LABEL_MIN_COEFFICIENT || a.value * b.value >= 0.0 {
        return false;
    }
    match (
        classify(a.determinant, reference, basis),
        classify(b.determinant, reference, basis),
    ) {
        (
            Excitation::Single {
                from: i1,
                to: a1,
                spin: s1,
            },
            Excitation::Single {
                from: i2,
                to: a2,
                spin: s2,
            },
        ) => i1 == i2 && a1 == a2 && s1 != s2,
        _ => false,
    }
}

/// Builds the character table of every eigenstate in `report` and assigns
/// labels. `basis` must be the determinant basis of `report` in SCF orbitals
/// so that the closed-shell reference is the Hartree–Fock determinant.
pub fn characterize(report: &EigenReport, basis: &SectorBasis, s_squared: &[f64]) -> Result<CharacterTable> {
    if report.states.nrows() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            got: report.states.nrows(),
        });
    }
    if s_squared.len() != report.len() {
        return Err(Error::DimensionMismatch {
            expected: report.len(),
            got: s_squared.len(),
        });
    }
    let reference = basis.closed_shell_reference();
    let mut states: Vec<StateCharacter> = (0..report.len())
        .map(|root| StateCharacter {
            root,
            energy: report.energies[root],
            s_squared: s_squared[root],
            label: StateLabel::Other,
            coefficients: coefficients_of(report.states.column(root).as_slice(), basis),
        })
        .collect();

    let singlets: Vec<usize> = (0..states.len()).filter(|&i| states[i].is_singlet()).collect();
    let Some((&ground, excited)) = singlets.split_first() else {
        return Ok(CharacterTable { states });
    };
    let top = &states[ground].coefficients[0];
    if top.value >= LABEL_MIN_COEFFICIENT && classify(top.determinant, reference, basis) == Excitation::Reference {
        states[ground].label = StateLabel::GroundAg;
    }
    if let Some(&i) = excited
        .iter()
        .find(|&&i| is_bu_pattern(&states[i].coefficients, reference, basis))
    {
        states[i].label = StateLabel::Bu;
    }
    if let Some(&i) = excited.iter().find(|&&i| {
        let top = &states[i].coefficients[0];
        states[i].label == StateLabel::Other
            && top.value >= LABEL_MIN_COEFFICIENT
            && classify(top.determinant, reference, basis) == Excitation::ClosedDouble
    }) {
        states[i].label = StateLabel::SecondAg;
    }
    Ok(CharacterTable { states })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcitationEnergies {
    /// Ground-state energy (eV).
    pub ground: f64,
    /// `E(1Bu) − E(1Ag)` (eV).
    #[serde(rename = "1Bu")]
    pub b_u: f64,
    /// `E(2Ag) − E(1Ag)` (eV).
    #[serde(rename = "2Ag")]
    pub a_g: f64,
}

/// Excitation energies of the labeled 1Bu and 2Ag states.
pub fn excitation_energies(table: &CharacterTable) -> Result<ExcitationEnergies> {
    let get = |label: StateLabel| {
        table
            .by_label(label)
            .map(|s| s.energy)
            .ok_or_else(|| Error::MissingLabel(label.to_string()))
    };
    let ground = get(StateLabel::GroundAg)?;
    Ok(ExcitationEnergies {
        ground,
        b_u: get(StateLabel::Bu)? - ground,
        a_g: get(StateLabel::SecondAg)? - ground,
    })
}
