use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::params::{InteractionVariant, ModelParameters};
use super::SpinOrdering;
use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, Ladder};

/// Entries below this magnitude (eV) are dropped from the two-body tensor.
pub const ERI_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisTag {
    Wannier,
    Canonical,
}

/// Real two-electron integrals `(pq|rs)` in chemist notation over spatial
/// orbitals, stored once per 8-fold symmetry class.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwoBodyTensor {
    n_orbitals: usize,
    entries: BTreeMap<[usize; 4], f64>,
}

/// Canonical representative of `(pq|rs)` under the real 8-fold symmetry.
pub fn canonical_index(p: usize, q: usize, r: usize, s: usize) -> [usize; 4] {
    let a = if p <= q { (p, q) } else { (q, p) };
    let b = if r <= s { (r, s) } else { (s, r) };
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    [x.0, x.1, y.0, y.1]
}

impl TwoBodyTensor {
    pub fn new(n_orbitals: usize) -> Self {
        TwoBodyTensor {
            n_orbitals,
            entries: BTreeMap::new(),
        }
    }

    pub fn n_orbitals(&self) -> usize {
        self.n_orbitals
    }

    /// Sets `(pq|rs)` and, implicitly, all of its symmetry partners.
    pub fn set(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        let key = canonical_index(p, q, r, s);
        if value.abs() < ERI_THRESHOLD {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.entries.get(&canonical_index(p, q, r, s)).copied().unwrap_or(0.0)
    }

    /// Symmetry-unique nonzero entries in canonical order.
    pub fn unique_entries(&self) -> impl Iterator<Item = ([usize; 4], f64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn n_unique(&self) -> usize {
        self.entries.len()
    }

    /// Every nonzero `(pq|rs)` with its full index, symmetry partners included.
    pub fn expanded(&self) -> Vec<([usize; 4], f64)> {
        let mut out = Vec::new();
        for (&[p, q, r, s], &v) in &self.entries {
            let mut partners = [
                [p, q, r, s],
                [q, p, r, s],
                [p, q, s, r],
                [q, p, s, r],
                [r, s, p, q],
                [s, r, p, q],
                [r, s, q, p],
                [s, r, q, p],
            ];
            partners.sort_unstable();
            let mut last = None;
            for idx in partners {
                if last != Some(idx) {
                    out.push((idx, v));
                    last = Some(idx);
                }
            }
        }
        out.sort_by_key(|a| a.0);
        out
    }

    /// Dense K⁴ array, index `((p*K + q)*K + r)*K + s`.
    pub fn to_dense(&self) -> Vec<f64> {
        let k = self.n_orbitals;
        let mut dense = vec![0.0; k * k * k * k];
        for ([p, q, r, s], v) in self.expanded() {
            dense[((p * k + q) * k + r) * k + s] = v;
        }
        dense
    }

    pub fn from_dense(n_orbitals: usize, dense: &[f64]) -> Self {
        let k = n_orbitals;
        let mut t = TwoBodyTensor::new(k);
        for p in 0..k {
            for q in p..k {
                for r in 0..k {
                    for s in r..k {
                        if (p, q) <= (r, s) {
                            t.set(p, q, r, s, dense[((p * k + q) * k + r) * k + s]);
                        }
                    }
                }
            }
        }
        t
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = TwoBodyTensor::new(self.n_orbitals);
        for (&[p, q, r, s], &v) in &self.entries {
            out.set(p, q, r, s, v * factor);
        }
        out
    }
}

/// One-body matrix plus two-body tensor over spatial orbitals; the spin
/// structure is implicit (spin-diagonal, spin-independent integrals).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOrbitalHamiltonian {
    /// Spatial one-body matrix (K×K, eV).
    pub one_body: DMatrix<f64>,
    pub two_body: TwoBodyTensor,
    /// Scalar energy shift (eV).
    pub constant: f64,
    pub basis: BasisTag,
}

impl SpinOrbitalHamiltonian {
    pub fn n_orbitals(&self) -> usize {
        self.one_body.nrows()
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_orbitals()
    }

    /// The 2K×2K spin-orbital one-body matrix in the given ordering.
    pub fn spin_one_body(&self, ordering: SpinOrdering) -> DMatrix<f64> {
        let k = self.n_orbitals();
        let mut h = DMatrix::zeros(2 * k, 2 * k);
        for spin in 0..2 {
            for i in 0..k {
                for j in 0..k {
                    h[(ordering.mode(i, spin, k), ordering.mode(j, spin, k))] = self.one_body[(i, j)];
                }
            }
        }
        h
    }

    /// Second-quantized form
    /// `Σ h_ij a†_iσ a_jσ + ½ Σ (pq|rs) a†_pσ a†_rρ a_sρ a_qσ + constant`.
    pub fn fermion_operator(&self, ordering: SpinOrdering) -> FermionOperator {
        let k = self.n_orbitals();
        let mode = |i: usize, spin: usize| ordering.mode(i, spin, k);
        let mut op = FermionOperator::new(2 * k);
        if self.constant != 0.0 {
            op.push(self.constant, vec![]);
        }
        for i in 0..k {
            for j in 0..k {
                let h = self.one_body[(i, j)];
                if h == 0.0 {
                    continue;
                }
                for spin in 0..2 {
                    op.push(
                        h,
                        vec![Ladder::create(mode(i, spin)), Ladder::annihilate(mode(j, spin))],
                    );
                }
            }
        }
        for ([p, q, r, s], v) in self.two_body.expanded() {
            for sigma in 0..2 {
                for rho in 0..2 {
                    let (ps, rr) = (mode(p, sigma), mode(r, rho));
                    let (sr, qs) = (mode(s, rho), mode(q, sigma));
                    if ps == rr || sr == qs {
                        continue;
                    }
                    op.push(
                        0.5 * v,
                        vec![
                            Ladder::create(ps),
                            Ladder::create(rr),
                            Ladder::annihilate(sr),
                            Ladder::annihilate(qs),
                        ],
                    );
                }
            }
        }
        op
    }

    /// `a·self + b·other`; both must share the orbital count.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.n_orbitals() != other.n_orbitals() {
            return Err(Error::DimensionMismatch {
                expected: self.n_orbitals(),
                got: other.n_orbitals(),
            });
        }
        let k = self.n_orbitals();
        let da = self.two_body.to_dense();
        let db = other.two_body.to_dense();
        let dense: Vec<f64> = da.iter().zip(&db).map(|(x, y)| a * x + b * y).collect();
        Ok(SpinOrbitalHamiltonian {
            one_body: &self.one_body * a + &other.one_body * b,
            two_body: TwoBodyTensor::from_dense(k, &dense),
            constant: a * self.constant + b * other.constant,
            basis: self.basis,
        })
    }
}

/// Effective hopping with the double-counting correction subtracted from the
/// diagonal: `t_ii − (α U_ii D_ii + Σ_{k≠i} U_ik D_kk)`.
pub fn build_one_body(params: &ModelParameters) -> DMatrix<f64> {
    let k = params.n_orbitals();
    let u = &params.coulomb;
    let d = &params.density;
    let mut t_eff = params.hopping.clone();
    for i in 0..k {
        let mut dc = params.alpha * u[(i, i)] * d[(i, i)];
        for j in (0..k).filter(|&j| j != i) {
            dc += u[(i, j)] * d[(j, j)];
        }
        t_eff[(i, i)] -= dc;
    }
    t_eff
}

/// Coulomb `(ii|jj) = U_ij`; with exchange also `(ij|ji) = (ij|ij) = J_ij`
/// for `i ≠ j` (one symmetry class for real orbitals).
pub fn build_two_body(params: &ModelParameters) -> TwoBodyTensor {
    let k = params.n_orbitals();
    let mut eri = TwoBodyTensor::new(k);
    for i in 0..k {
        for j in i..k {
            eri.set(i, i, j, j, params.coulomb[(i, j)]);
        }
    }
    if params.variant == InteractionVariant::WithExchange {
        for i in 0..k {
            for j in (i + 1)..k {
                eri.set(i, j, i, j, params.exchange[(i, j)]);
            }
        }
    }
    eri
}

pub fn assemble_hamiltonian(params: &ModelParameters) -> SpinOrbitalHamiltonian {
    SpinOrbitalHamiltonian {
        one_body: build_one_body(params),
        two_body: build_two_body(params),
        constant: 0.0,
        basis: BasisTag::Wannier,
    }
}

/// Max deviation of `CᵀC` from the identity.
pub fn orthogonality_error(c: &DMatrix<f64>) -> f64 {
    let ctc = c.transpose() * c;
    let n = ctc.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ctc[(i, j)] - target).abs());
        }
    }
    worst
}

/// Re-expresses the Hamiltonian in orbitals `φ̃_j = Σ_i φ_i C_ij`.
pub fn rotate_basis(ham: &SpinOrbitalHamiltonian, c: &DMatrix<f64>) -> Result<SpinOrbitalHamiltonian> {
    let k = ham.n_orbitals();
    if c.nrows() != k || c.ncols() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: c.nrows(),
        });
    }
    let err = orthogonality_error(c);
    if err > 1e-10 {
        return Err(Error::NotOrthogonal(err));
    }
    let one_body = c.transpose() * &ham.one_body * c;

    // Four quarter transformations, one index at a time.
    let mut g = ham.two_body.to_dense();
    let idx = |a: usize, b: usize, cc: usize, d: usize| ((a * k + b) * k + cc) * k + d;
    for axis in 0..4 {
        let mut out = vec![0.0; g.len()];
        for a in 0..k {
            for b in 0..k {
                for cc in 0..k {
                    for d in 0..k {
                        let mut acc = 0.0;
                        for m in 0..k {
                            let (src, coef) = match axis {
                                0 => (idx(m, b, cc, d), c[(m, a)]),
                                1 => (idx(a, m, cc, d), c[(m, b)]),
                                2 => (idx(a, b, m, d), c[(m, cc)]),
                                _ => (idx(a, b, cc, m), c[(m, d)]),
                            };
                            acc += coef * g[src];
                        }
                        out[idx(a, b, cc, d)] = acc;
                    }
                }
            }
        }
        g = out;
    }

    Ok(SpinOrbitalHamiltonian {
        one_body,
        two_body: TwoBodyTensor::from_dense(k, &g),
        constant: ham.constant,
        basis: BasisTag::Canonical,
    })
}
