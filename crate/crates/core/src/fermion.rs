//! Real-coefficient fermionic operators as sums of ladder-operator products,
//! and their action on occupation-number determinants.
//!
//! A determinant is a `u64` bitmask over modes; mode `p` occupied iff bit `p`
//! is set. Ladder operators carry the Jordan–Wigner phase
//! `(-1)^{#occupied modes below p}`, the same convention used by the qubit
//! mapping, so matrices built here and from the Pauli route must agree
//! elementwise.

use crate::model::SpinOrdering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Ladder { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Ladder { mode, dagger: false }
    }

    /// Applies this operator to `det`; `None` when the result vanishes.
    #[inline]
    pub fn apply(self, det: u64) -> Option<(f64, u64)> {
        let bit = 1u64 << self.mode;
        let occupied = det & bit != 0;
        if occupied == self.dagger {
            return None;
        }
        let below = (det & (bit - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
        Some((sign, det ^ bit))
    }
}

/// `Σ_k c_k Π_j op_{k,j}`, products written left to right (rightmost acts first).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FermionOperator {
    pub n_modes: usize,
    pub terms: Vec<(f64, Vec<Ladder>)>,
}

/// Applies a product of ladder operators (rightmost first).
#[inline]
pub fn apply_product(ops: &[Ladder], det: u64) -> Option<(f64, u64)> {
    let mut sign = 1.0;
    let mut state = det;
    for op in ops.iter().rev() {
        let (s, next) = op.apply(state)?;
        sign *= s;
        state = next;
    }
    Some((sign, state))
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        FermionOperator {
            n_modes,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coefficient: f64, ops: Vec<Ladder>) {
        debug_assert!(ops.iter().all(|o| o.mode < self.n_modes));
        self.terms.push((coefficient, ops));
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for (c, _) in &mut self.terms {
            *c *= factor;
        }
        self
    }

    pub fn extend(&mut self, other: FermionOperator) {
        assert_eq!(self.n_modes, other.n_modes);
        self.terms.extend(other.terms);
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &FermionOperator) -> FermionOperator {
        assert_eq!(self.n_modes, other.n_modes);
        let mut out = FermionOperator::new(self.n_modes);
        for (ca, a) in &self.terms {
            for (cb, b) in &other.terms {
                let mut ops = a.clone();
                ops.extend_from_slice(b);
                out.push(ca * cb, ops);
            }
        }
        out
    }

    /// `O|det⟩` as a list of `(det', amplitude)`; duplicates are merged.
    pub fn apply(&self, det: u64) -> Vec<(u64, f64)> {
        let mut out: Vec<(u64, f64)> = Vec::new();
        for (c, ops) in &self.terms {
            if let Some((sign, next)) = apply_product(ops, det) {
                out.push((next, c * sign));
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u64, f64)> = Vec::with_capacity(out.len());
        for (d, v) in out {
            match merged.last_mut() {
                Some(last) if last.0 == d => last.1 += v,
                _ => merged.push((d, v)),
            }
        }
        merged
    }
}

/// Total particle number `Σ_p n_p`.
pub fn number_operator(n_modes: usize) -> FermionOperator {
    let mut op = FermionOperator::new(n_modes);
    for p in 0..n_modes {
        op.push(1.0, vec![Ladder::create(p), Ladder::annihilate(p)]);
    }
    op
}

/// `S_z = ½ Σ_i (n_iα − n_iβ)`.
pub fn sz_operator(n_orbitals: usize, ordering: SpinOrdering) -> FermionOperator {
    let mut op = FermionOperator::new(2 * n_orbitals);
    for i in 0..n_orbitals {
        let a = ordering.mode(i, 0, n_orbitals);
        let b = ordering.mode(i, 1, n_orbitals);
        op.push(0.5, vec![Ladder::create(a), Ladder::annihilate(a)]);
        op.push(-0.5, vec![Ladder::create(b), Ladder::annihilate(b)]);
    }
    op
}

/// `S² = S₋S₊ + S_z² + S_z`.
pub fn s_squared_operator(n_orbitals: usize, ordering: SpinOrdering) -> FermionOperator {
    let n = 2 * n_orbitals;
    let mut s_plus = FermionOperator::new(n);
    let mut s_minus = FermionOperator::new(n);
    for i in 0..n_orbitals {
        let a = ordering.mode(i, 0, n_orbitals);
        let b = ordering.mode(i, 1, n_orbitals);
        s_plus.push(1.0, vec![Ladder::create(a), Ladder::annihilate(b)]);
        s_minus.push(1.0, vec![Ladder::create(b), Ladder::annihilate(a)]);
    }
    let sz = sz_operator(n_orbitals, ordering);
    let mut op = s_minus.mul(&s_plus);
    op.extend(sz.mul(&sz));
    op.extend(sz);
    op
}
