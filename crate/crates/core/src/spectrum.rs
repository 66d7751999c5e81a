//! Dense self-adjoint operators and their clustered eigendecompositions.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

/// Eigenvalues closer than this are grouped into one eigenspace.
pub const CLUSTER_GAP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SelfAdjointOperator {
    matrix: DMatrix<f64>,
}

impl SelfAdjointOperator {
    /// Build from the images of the standard basis vectors.
    pub fn from_columns<F>(dim: usize, mut image: F) -> Self
    where
        F: FnMut(&DVector<f64>) -> DVector<f64>,
    {
        let mut matrix = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            let e = DVector::from_fn(dim, |i, _| if i == k { 1.0 } else { 0.0 });
            matrix.set_column(k, &image(&e));
        }
        SelfAdjointOperator { matrix }
    }

    pub fn from_matrix(matrix: DMatrix<f64>) -> Self {
        assert!(matrix.is_square(), "operator matrix must be square");
        SelfAdjointOperator { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }

    /// `<v, K v>`.
    pub fn rayleigh(&self, v: &DVector<f64>) -> f64 {
        v.dot(&self.apply(v)) / v.norm_squared()
    }

    /// Largest entry of `K - K^T`.
    pub fn symmetry_defect(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    pub fn spectrum(&self) -> Spectrum {
        let sym = (&self.matrix + self.matrix.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &idx in &order {
            match groups.last_mut() {
                Some(g)
                    if (eig.eigenvalues[idx] - eig.eigenvalues[*g.last().unwrap()]).abs()
                        <= CLUSTER_GAP =>
                {
                    g.push(idx)
                }
                _ => groups.push(vec![idx]),
            }
        }

        let groups: Vec<EigenGroup> = groups
            .into_iter()
            .map(|g| {
                let value = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
                let basis = g
                    .iter()
                    .map(|&i| eig.eigenvectors.column(i).into_owned())
                    .collect();
                EigenGroup {
                    value,
                    multiplicity: g.len(),
                    basis,
                }
            })
            .collect();

        let mut residual: f64 = 0.0;
        for g in &groups {
            for v in &g.basis {
                residual = residual.max((self.apply(v) - v * g.value).norm());
            }
        }
        let all: Vec<&DVector<f64>> = groups.iter().flat_map(|g| g.basis.iter()).collect();
        let mut orthonormality: f64 = 0.0;
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                orthonormality = orthonormality.max((a.dot(b) - target).abs());
            }
        }
        Spectrum {
            groups,
            residual,
            orthonormality,
        }
    }
}

/// One eigenvalue with its multiplicity and an orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    pub basis: Vec<DVector<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by increasing eigenvalue.
    pub groups: Vec<EigenGroup>,
    /// Max over eigenvectors of `|K v - lambda v|`.
    pub residual: f64,
    /// Max entry of `V^T V - I` over the full eigenbasis.
    pub orthonormality: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSummary {
    pub value: f64,
    pub multiplicity: usize,
}

impl Spectrum {
    pub fn dimension(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum()
    }

    pub fn summary(&self) -> Vec<EigenvalueSummary> {
        self.groups
            .iter()
            .map(|g| EigenvalueSummary {
                value: g.value,
                multiplicity: g.multiplicity,
            })
            .collect()
    }

    /// The group whose value is within `tol` of `value`.
    pub fn group_near(&self, value: f64, tol: f64) -> Option<&EigenGroup> {
        self.groups.iter().find(|g| (g.value - value).abs() <= tol)
    }

    pub fn multiplicity_of(&self, value: f64, tol: f64) -> usize {
        self.group_near(value, tol).map_or(0, |g| g.multiplicity)
    }
}
