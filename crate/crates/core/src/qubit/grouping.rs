//! Qubit-wise commuting ("Abelian") measurement groups.

use serde::{Deserialize, Serialize};

use super::pauli::{PauliString, PauliSum};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupingStrategy {
    /// Visit terms by descending |coefficient|; put each in the first group
    /// it qubit-wise commutes with.
    #[default]
    FirstFit,
    /// Greedy colouring of the non-commutation graph, vertices taken by
    /// descending degree (ties by descending |coefficient|), each given the
    /// smallest colour unused by its neighbours.
    LargestDegreeFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementGroup {
    pub terms: Vec<(PauliString, f64)>,
    /// One letter per qubit; `I` where no term in the group acts.
    pub basis: PauliString,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementGrouping {
    pub groups: Vec<MeasurementGroup>,
}

impl MeasurementGrouping {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Every pair in every group commutes qubit-wise and matches the basis.
    pub fn is_valid(&self) -> bool {
        self.groups.iter().all(|g| {
            g.terms.iter().all(|(p, _)| basis_covers(&g.basis, p))
                && g.terms
                    .iter()
                    .enumerate()
                    .all(|(i, (a, _))| g.terms[i + 1..].iter().all(|(b, _)| a.qubitwise_commutes(b)))
        })
    }
}

fn basis_covers(basis: &PauliString, p: &PauliString) -> bool {
    let support = p.x_bits() | p.z_bits();
    basis.x_bits() & support == p.x_bits() && basis.z_bits() & support == p.z_bits()
}

fn merge_basis(basis: &PauliString, p: &PauliString) -> PauliString {
    PauliString::new(
        basis.n_qubits(),
        basis.x_bits() | p.x_bits(),
        basis.z_bits() | p.z_bits(),
    )
}

/// Non-identity terms sorted by descending |coefficient|, ties by string.
fn sorted_terms(psum: &PauliSum) -> Vec<(PauliString, f64)> {
    let mut terms: Vec<(PauliString, f64)> = psum.non_identity_terms().map(|(p, c)| (*p, c)).collect();
    terms.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then(a.0.cmp(&b.0)));
    terms
}

/// Groups with the default first-fit strategy.
pub fn abelian_group(psum: &PauliSum) -> MeasurementGrouping {
    abelian_group_with(psum, GroupingStrategy::FirstFit)
}

pub fn abelian_group_with(psum: &PauliSum, strategy: GroupingStrategy) -> MeasurementGrouping {
    let terms = sorted_terms(psum);
    let n = psum.n_qubits();
    let groups = match strategy {
        GroupingStrategy::FirstFit => {
            let mut groups: Vec<MeasurementGroup> = Vec::new();
            for (p, c) in terms {
                match groups.iter_mut().find(|g| g.basis.qubitwise_commutes(&p)) {
                    Some(g) => {
                        g.basis = merge_basis(&g.basis, &p);
                        g.terms.push((p, c));
                    }
                    None => groups.push(MeasurementGroup {
                        terms: vec![(p, c)],
                        basis: p,
                    }),
                }
            }
            groups
        }
        GroupingStrategy::LargestDegreeFirst => {
            let m = terms.len();
            let adjacency: Vec<Vec<usize>> = (0..m)
                .map(|i| {
                    (0..m)
                        .filter(|&j| j != i && !terms[i].0.qubitwise_commutes(&terms[j].0))
                        .collect()
                })
                .collect();
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(adjacency[i].len()));
            let mut colour = vec![usize::MAX; m];
            for &i in &order {
                let used: Vec<usize> = adjacency[i]
                    .iter()
                    .map(|&j| colour[j])
                    .filter(|&c| c != usize::MAX)
                    .collect();
                colour[i] = (0..).find(|c| !used.contains(c)).expect("free colour");
            }
            let n_colours = colour.iter().copied().max().map_or(0, |c| c + 1);
            let mut groups: Vec<MeasurementGroup> = (0..n_colours)
                .map(|_| MeasurementGroup {
                    terms: Vec::new(),
                    basis: PauliString::identity(n),
                })
                .collect();
            for (i, (p, c)) in terms.into_iter().enumerate() {
                let g = &mut groups[colour[i]];
                g.basis = merge_basis(&g.basis, &p);
                g.terms.push((p, c));
            }
            groups
        }
    };
    MeasurementGrouping { groups }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(lines: &str) -> PauliSum {
        PauliSum::from_text(lines).unwrap()
    }

    #[test]
    fn diagonal_sum_is_one_group() {
        let s = sum("1.0 IIII\n0.5 ZIII\n-0.3 ZZII\n0.2 IZZZ\n0.7 ZIIZ\n");
        for strategy in [GroupingStrategy::FirstFit, GroupingStrategy::LargestDegreeFirst] {
            let g = abelian_group_with(&s, strategy);
            assert_eq!(g.len(), 1);
            assert_eq!(g.groups[0].terms.len(), 4);
            assert!(g.is_valid());
        }
    }

    #[test]
    fn single_term() {
        let g = abelian_group(&sum("2.0 XZYI\n"));
        assert_eq!(g.len(), 1);
        assert_eq!(g.groups[0].basis.to_string(), "XZYI");
    }

    #[test]
    fn conflicting_terms_split() {
        let s = sum("1.0 XX\n0.9 YY\n0.8 XI\n0.1 ZZ\n");
        let g = abelian_group(&s);
        assert!(g.is_valid());
        assert_eq!(g.len(), 3);
        assert_eq!(g.groups[0].basis.to_string(), "XX");
        assert_eq!(g.groups[0].terms.len(), 2);
    }
}
