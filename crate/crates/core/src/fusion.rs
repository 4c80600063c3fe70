//! Weighted subspace systems (fusion frames).

use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frames::BoundsReport;
use crate::linalg::{orthonormality_defect, orthonormalize, Matrix, RANK_TOL};

const ORTHONORMAL_TOL: f64 = 1e-9;
const CROSS_GRAM_TOL: f64 = 1e-9;

/// A subspace of `R^dim` stored through an orthonormal basis (columns).
///
/// The zero subspace is allowed and has a `dim x 0` basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subspace {
    dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the given vectors; an empty list yields the zero subspace.
    pub fn from_spanning(dim: usize, spanning: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 {
            return Err(FrameError::EmptyInput);
        }
        if spanning.is_empty() {
            return Ok(Self::zero(dim));
        }
        if let Some(bad) = spanning.iter().find(|v| v.len() != dim) {
            return Err(FrameError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let (basis, _) = orthonormalize(spanning, RANK_TOL)?;
        Ok(Self { dim, basis })
    }

    pub fn from_orthonormal_basis(basis: Matrix) -> Result<Self> {
        if !basis.is_finite() {
            return Err(FrameError::NonFinite);
        }
        let deviation = orthonormality_defect(&basis);
        if deviation > ORTHONORMAL_TOL || basis.cols() > basis.rows() {
            return Err(FrameError::NotOrthonormal { deviation });
        }
        Ok(Self {
            dim: basis.rows(),
            basis,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Matrix::zeros(dim, 0),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self {
            dim,
            basis: Matrix::identity(dim),
        }
    }

    /// Span of the standard basis vectors at the given 0-based coordinates.
    pub fn coordinate(dim: usize, coords: &[usize]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(coords.len());
        for &k in coords {
            if k >= dim {
                return Err(FrameError::InvalidInput(format!(
                    "coordinate {k} out of range for dimension {dim}"
                )));
            }
            vectors.push(crate::linalg::unit(dim, k));
        }
        Self::from_spanning(dim, &vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<f64>> {
        self.basis.columns()
    }

    pub fn projector(&self) -> Matrix {
        self.basis.matmul(&self.basis.transpose())
    }

    /// `P_W f`.
    pub fn project(&self, f: &[f64]) -> Vec<f64> {
        let coeffs = self.basis.transpose().mul_vec(f);
        self.basis.mul_vec(&coeffs)
    }

    /// `E W`, re-orthonormalized.
    pub fn mapped(&self, e: &Matrix) -> Result<Self> {
        if e.cols() != self.dim || e.rows() != self.dim {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim,
                found: e.cols(),
            });
        }
        let images: Vec<Vec<f64>> = self.basis_vectors().iter().map(|b| e.mul_vec(b)).collect();
        Self::from_spanning(self.dim, &images)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionMember {
    pub subspace: Subspace,
    pub weight: f64,
}

/// A finite fusion frame `({W_i}, {ν_i})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionFrame {
    dim: usize,
    members: Vec<FusionMember>,
}

impl FusionFrame {
    pub fn new(dim: usize, members: Vec<FusionMember>) -> Result<Self> {
        if dim == 0 || members.is_empty() {
            return Err(FrameError::EmptyInput);
        }
        for (index, m) in members.iter().enumerate() {
            if m.subspace.dim() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    found: m.subspace.dim(),
                });
            }
            if !(m.weight.is_finite() && m.weight > 0.0) {
                return Err(FrameError::InvalidWeight {
                    index,
                    value: m.weight,
                });
            }
        }
        Ok(Self { dim, members })
    }

    /// Convenience constructor pairing subspaces with weights.
    pub fn from_parts(dim: usize, subspaces: Vec<Subspace>, weights: Vec<f64>) -> Result<Self> {
        if subspaces.len() != weights.len() {
            return Err(FrameError::DimensionMismatch {
                expected: subspaces.len(),
                found: weights.len(),
            });
        }
        let members = subspaces
            .into_iter()
            .zip(weights)
            .map(|(subspace, weight)| FusionMember { subspace, weight })
            .collect();
        Self::new(dim, members)
    }

    /// All weights equal to one.
    pub fn unweighted(dim: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        let weights = vec![1.0; subspaces.len()];
        Self::from_parts(dim, subspaces, weights)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[FusionMember] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &FusionMember {
        &self.members[i]
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.weight).collect()
    }

    /// `ν_i² P_{W_i}`.
    pub fn member_operator(&self, i: usize) -> Matrix {
        let m = &self.members[i];
        m.subspace.projector().scale(m.weight * m.weight)
    }

    /// `S = Σ ν_i² P_{W_i}`.
    pub fn fusion_frame_operator(&self) -> Matrix {
        let mut s = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.len() {
            s.add_assign(&self.member_operator(i));
        }
        s
    }

    pub fn fusion_bounds(&self) -> Result<BoundsReport> {
        BoundsReport::from_operator(&self.fusion_frame_operator())
    }

    /// `{ν_i P_{W_i} f}`.
    pub fn analysis_apply(&self, f: &[f64]) -> Result<Vec<Vec<f64>>> {
        if f.len() != self.dim {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim,
                found: f.len(),
            });
        }
        Ok(self
            .members
            .iter()
            .map(|m| {
                m.subspace
                    .project(f)
                    .into_iter()
                    .map(|x| m.weight * x)
                    .collect()
            })
            .collect())
    }

    /// `Σ ν_i c_i` for `c_i ∈ W_i`, evaluated as `Σ ν_i P_{W_i} c_i` on arbitrary `c_i`.
    pub fn synthesis_apply(&self, components: &[Vec<f64>]) -> Result<Vec<f64>> {
        if components.len() != self.len() {
            return Err(FrameError::DimensionMismatch {
                expected: self.len(),
                found: components.len(),
            });
        }
        let mut out = vec![0.0; self.dim];
        for (m, c) in self.members.iter().zip(components) {
            if c.len() != self.dim {
                return Err(FrameError::DimensionMismatch {
                    expected: self.dim,
                    found: c.len(),
                });
            }
            for (o, x) in out.iter_mut().zip(m.subspace.project(c)) {
                *o += m.weight * x;
            }
        }
        Ok(out)
    }

    /// The stacked matrix `[ν_1 B_1 | ν_2 B_2 | ...]`.
    pub fn stacked_weighted_bases(&self) -> Matrix {
        let scaled: Vec<Matrix> = self
            .members
            .iter()
            .map(|m| m.subspace.basis().scale(m.weight))
            .collect();
        let refs: Vec<&Matrix> = scaled.iter().collect();
        Matrix::hstack(self.dim, &refs).expect("members share the ambient dimension")
    }

    fn column_rank(&self, stacked: &Matrix) -> Result<usize> {
        if stacked.cols() == 0 {
            return Ok(0);
        }
        Ok(orthonormalize(&stacked.columns(), RANK_TOL)?.1)
    }

    /// Whether the synthesis operator maps onto `R^dim`.
    pub fn synthesis_is_onto(&self) -> Result<bool> {
        Ok(self.column_rank(&self.stacked_weighted_bases())? == self.dim)
    }

    /// Whether every `f` splits uniquely as `Σ f_i` with `f_i ∈ W_i`.
    pub fn is_riesz_decomposition(&self) -> Result<bool> {
        let total: usize = self.members.iter().map(|m| m.subspace.rank()).sum();
        if total != self.dim {
            return Ok(false);
        }
        let bases: Vec<&Matrix> = self.members.iter().map(|m| m.subspace.basis()).collect();
        let stacked = Matrix::hstack(self.dim, &bases)?;
        Ok(self.column_rank(&stacked)? == self.dim)
    }

    /// Largest entry of any cross-Gram block `B_iᵀ B_j`, `i ≠ j`.
    pub fn max_cross_gram(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let g = self.members[i]
                    .subspace
                    .basis()
                    .transpose()
                    .matmul(self.members[j].subspace.basis());
                worst = worst.max(g.max_abs());
            }
        }
        worst
    }

    pub fn is_orthonormal_fusion_basis(&self) -> Result<bool> {
        Ok(self.is_riesz_decomposition()? && self.max_cross_gram() <= CROSS_GRAM_TOL)
    }

    pub fn select(&self, indices: &[usize]) -> Result<FusionFrame> {
        let mut members = Vec::with_capacity(indices.len());
        for &i in indices {
            let m = self.members.get(i).ok_or_else(|| {
                FrameError::InvalidInput(format!(
                    "index {i} out of range for {} members",
                    self.len()
                ))
            })?;
            members.push(m.clone());
        }
        FusionFrame::new(self.dim, members)
    }
}
