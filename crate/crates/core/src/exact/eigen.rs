//! Dense symmetric eigensolves.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Lowest eigenpairs of a real symmetric matrix, ascending.
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub energies: Vec<f64>,
    /// Eigenvectors as columns, aligned with `energies`.
    pub states: DMatrix<f64>,
}

impl EigenReport {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn state(&self, i: usize) -> DVector<f64> {
        self.states.column(i).into_owned()
    }
}

/// All eigenvalues and eigenvectors sorted ascending.
pub(crate) fn sorted_eigen(matrix: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(matrix.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>());
    (values, vectors)
}

/// The `k` lowest eigenpairs of a symmetric matrix.
pub fn diagonalize(matrix: &DMatrix<f64>, k: usize) -> Result<EigenReport> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: matrix.ncols(),
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenpairs of a {n}×{n} matrix"
        )));
    }
    let (values, vectors) = sorted_eigen(matrix);
    Ok(EigenReport {
        energies: values[..k].to_vec(),
        states: vectors.columns(0, k).into_owned(),
    })
}
