use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_with::{DeserializeFromStr, SerializeDisplay};

use crate::error::{Error, Result};

/// Coefficients with magnitude below this (eV) are never stored.
pub const PAULI_THRESHOLD: f64 = 1e-10;

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit `q` carries `I` (x=0,z=0), `X` (1,0), `Z` (0,1) or `Y` (1,1). The
/// operator is `Π_q i^{x_q z_q} X^{x_q} Z^{z_q}`, so `Y = iXZ` exactly.
/// Text form lists qubit 0 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, SerializeDisplay, DeserializeFromStr)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn new(n_qubits: usize, x: u64, z: u64) -> Self {
        assert!(n_qubits <= 64, "at most 64 qubits supported");
        let mask = if n_qubits == 64 {
            u64::MAX
        } else {
            (1u64 << n_qubits) - 1
        };
        assert!(x & !mask == 0 && z & !mask == 0, "bits beyond qubit count");
        PauliString { n_qubits, x, z }
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString::new(n_qubits, 0, 0)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// `Z`-only strings are diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn letter(&self, qubit: usize) -> char {
        match ((self.x >> qubit) & 1, (self.z >> qubit) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    /// Qubit-wise commutation: on every qubit the letters agree or one is `I`.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> bool {
        let support_a = self.x | self.z;
        let support_b = other.x | other.z;
        let both = support_a & support_b;
        (self.x ^ other.x) & both == 0 && (self.z ^ other.z) & both == 0
    }

    /// Full (group-theoretic) commutation.
    pub fn commutes(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// `self · other = i^k · result`, returning `(k mod 4, result)`.
    pub fn mul(&self, other: &PauliString) -> (u8, PauliString) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = (self.x & self.z).count_ones() as i64 + (other.x & other.z).count_ones() as i64
            - (x & z).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64;
        (
            k.rem_euclid(4) as u8,
            PauliString {
                n_qubits: self.n_qubits,
                x,
                z,
            },
        )
    }

    /// `P|b⟩ = phase · |b'⟩` for computational basis state `b`.
    #[inline]
    pub fn apply_basis(&self, b: u64) -> (Complex64, u64) {
        let k = (self.x & self.z).count_ones() + 2 * (self.z & b).count_ones();
        (I_POW[(k % 4) as usize], b ^ self.x)
    }

    /// Dense `2^n × 2^n` matrix, qubit 0 least significant. Small `n` only.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim as u64 {
            let (phase, out) = self.apply_basis(b);
            m[(out as usize, b as usize)] = phase;
        }
        m
    }
}

pub(crate) const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > 64 {
            return Err(Error::InvalidArgument(format!("bad Pauli string length {}", s.len())));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (q, c) in s.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                other => return Err(Error::InvalidArgument(format!("bad Pauli letter {other:?}"))),
            }
        }
        Ok(PauliString::new(s.chars().count(), x, z))
    }
}

/// Real linear combination of Pauli strings on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Adds `coefficient · string`, merging and pruning below threshold.
    pub fn add_term(&mut self, string: PauliString, coefficient: f64) {
        assert_eq!(string.n_qubits(), self.n_qubits, "qubit count mismatch");
        let entry = self.terms.entry(string).or_insert(0.0);
        *entry += coefficient;
        if entry.abs() < PAULI_THRESHOLD {
            self.terms.remove(&string);
        }
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = (PauliString, f64)>) -> Self {
        let mut s = PauliSum::new(n_qubits);
        for (p, c) in terms {
            s.add_term(p, c);
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> + '_ {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn non_identity_terms(&self) -> impl Iterator<Item = (&PauliString, f64)> + '_ {
        self.terms().filter(|(p, _)| !p.is_identity())
    }

    pub fn coefficient(&self, string: &PauliString) -> f64 {
        self.terms.get(string).copied().unwrap_or(0.0)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.coefficient(&PauliString::identity(self.n_qubits))
    }

    /// Number of stored strings, identity included.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn remove(&mut self, string: &PauliString) -> Option<f64> {
        self.terms.remove(string)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        PauliSum::from_terms(self.n_qubits, self.terms().map(|(p, c)| (*p, c * factor)))
    }

    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: f64, other: &PauliSum, b: f64) -> Self {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut out = self.scaled(a);
        for (p, c) in other.terms() {
            out.add_term(*p, b * c);
        }
        out
    }

    /// `H|ψ⟩`.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(psi.len(), 1usize << self.n_qubits);
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (p, c) in self.terms() {
            for (b, amp) in psi.iter().enumerate() {
                if amp.re == 0.0 && amp.im == 0.0 {
                    continue;
                }
                let (phase, target) = p.apply_basis(b as u64);
                out[target as usize] += phase * amp * c;
            }
        }
        out
    }

    /// Column `H|b⟩` as sparse `(row, value)` pairs with duplicates merged.
    pub fn column(&self, b: u64) -> Vec<(u64, Complex64)> {
        let mut out: Vec<(u64, Complex64)> = self
            .terms()
            .map(|(p, c)| {
                let (phase, target) = p.apply_basis(b);
                (target, phase * c)
            })
            .collect();
        out.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u64, Complex64)> = Vec::with_capacity(out.len());
        for (t, v) in out {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += v,
                _ => merged.push((t, v)),
            }
        }
        merged
    }

    /// Dense matrix; intended for `n_qubits ≤ 12`.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim as u64 {
            for (row, v) in self.column(b) {
                m[(row as usize, b as usize)] += v;
            }
        }
        m
    }

    /// `⟨ψ|H|ψ⟩`, real part (the imaginary part vanishes for Hermitian sums).
    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        let h_psi = self.apply(psi);
        psi.iter().zip(&h_psi).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// One `coefficient STRING` line per term, identity included.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, c) in self.terms() {
            s.push_str(&format!("{c} {p}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut sum: Option<PauliSum> = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (coef, string) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::parse(idx + 1, "expected `coefficient STRING`"))?;
            let coef: f64 = coef
                .replace('\u{2212}', "-")
                .parse()
                .map_err(|_| Error::parse(idx + 1, format!("bad coefficient {coef:?}")))?;
            let p: PauliString = string
                .trim()
                .parse()
                .map_err(|e: Error| Error::parse(idx + 1, e.to_string()))?;
            let s = sum.get_or_insert_with(|| PauliSum::new(p.n_qubits()));
            if p.n_qubits() != s.n_qubits {
                return Err(Error::parse(idx + 1, "inconsistent string length"));
            }
            s.add_term(p, coef);
        }
        sum.ok_or_else(|| Error::parse(0, "empty Pauli sum"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_products() {
        // XY = iZ, YZ = iX, ZX = iY, YX = -iZ
        assert_eq!(ps("X").mul(&ps("Y")), (1, ps("Z")));
        assert_eq!(ps("Y").mul(&ps("Z")), (1, ps("X")));
        assert_eq!(ps("Z").mul(&ps("X")), (1, ps("Y")));
        assert_eq!(ps("Y").mul(&ps("X")), (3, ps("Z")));
        assert_eq!(ps("Y").mul(&ps("Y")), (0, ps("I")));
    }

    #[test]
    fn product_matches_dense() {
        let strings = ["XYZI", "YYXZ", "ZIYX", "IXXY", "YZZY"];
        for a in strings {
            for b in strings {
                let (k, c) = ps(a).mul(&ps(b));
                let lhs = ps(a).to_dense() * ps(b).to_dense();
                let rhs = c.to_dense() * I_POW[k as usize];
                assert!((lhs - rhs).camax() < 1e-15, "{a} * {b}");
            }
        }
    }

    #[test]
    fn y_matrix_convention() {
        let y = ps("Y").to_dense();
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        // qubit 0 is the least significant bit
        let zi = ps("ZI").to_dense();
        assert_eq!(zi[(1, 1)].re, -1.0);
        assert_eq!(zi[(2, 2)].re, 1.0);
    }

    #[test]
    fn qubitwise_commutation() {
        assert!(ps("XIZ").qubitwise_commutes(&ps("XZI")));
        assert!(!ps("XIZ").qubitwise_commutes(&ps("YIZ")));
        assert!(ps("XX").commutes(&ps("YY")));
        assert!(!ps("XX").qubitwise_commutes(&ps("YY")));
    }

    #[test]
    fn text_round_trip_and_pruning() {
        let mut s = PauliSum::new(4);
        s.add_term(ps("IIII"), 1.25);
        s.add_term(ps("ZIII"), -0.5);
        s.add_term(ps("XZXI"), 0.3);
        s.add_term(ps("XZXI"), -0.3 + 1e-12);
        assert_eq!(s.len(), 2);
        let back = PauliSum::from_text(&s.to_text()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_text().contains("-0.5 ZIII"));
        assert!(PauliSum::from_text("1.0 XQ").is_err());
        assert!(PauliSum::from_text("1.0 XI\n2.0 X").is_err());
    }
}
