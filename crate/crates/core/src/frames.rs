//! Finite discrete frames.

use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::linalg::{sym_eig, Matrix};

/// Relative threshold separating a frame from a degenerate family: the lower
/// bound must exceed `FRAME_TOL * upper`.
pub const FRAME_TOL: f64 = 1e-10;

/// Decides frame-ness from a pair of optimal bounds.
pub fn bounds_define_frame(lower: f64, upper: f64) -> bool {
    upper > 0.0 && lower > FRAME_TOL * upper
}

/// Optimal lower and upper bounds of a positive operator, with the unit
/// vectors that attain them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
    pub witness_low: Vec<f64>,
    pub witness_high: Vec<f64>,
}

impl BoundsReport {
    /// Reads the bounds off the spectrum of a symmetric PSD operator.
    pub fn from_operator(s: &Matrix) -> Result<Self> {
        let eig = sym_eig(s)?;
        let lower = eig.min().max(0.0);
        let upper = eig.max().max(0.0);
        Ok(Self {
            lower,
            upper,
            is_frame: bounds_define_frame(lower, upper),
            witness_low: eig.min_vector(),
            witness_high: eig.max_vector(),
        })
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        self.is_frame && (self.upper - self.lower).abs() <= tol * self.upper.max(1.0)
    }

    pub fn is_parseval(&self, tol: f64) -> bool {
        (self.lower - 1.0).abs() <= tol && (self.upper - 1.0).abs() <= tol
    }
}

/// A finite family `{f_i}` in `R^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteFrame {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl DiscreteFrame {
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 || vectors.is_empty() {
            return Err(FrameError::EmptyInput);
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(FrameError::NonFinite);
            }
        }
        Ok(Self { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    /// `S = Σ f_i f_iᵀ`.
    pub fn frame_operator(&self) -> Matrix {
        let mut s = Matrix::zeros(self.dim, self.dim);
        for v in &self.vectors {
            s.add_outer(1.0, v, v);
        }
        s
    }

    pub fn optimal_bounds(&self) -> Result<BoundsReport> {
        BoundsReport::from_operator(&self.frame_operator())
    }

    /// `U`, the `n x d` matrix whose rows are the frame vectors.
    pub fn analysis_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.vectors).expect("vectors share the frame dimension")
    }

    /// `T = Uᵀ`.
    pub fn synthesis_matrix(&self) -> Matrix {
        self.analysis_matrix().transpose()
    }

    /// `Σ_i ⟨f, f_i⟩²`.
    pub fn energy(&self, f: &[f64]) -> f64 {
        self.vectors
            .iter()
            .map(|v| crate::linalg::dot(f, v).powi(2))
            .sum()
    }

    /// Canonical dual `{S⁻¹ f_i}`.
    pub fn dual_frame(&self) -> Result<DiscreteFrame> {
        let bounds = self.optimal_bounds()?;
        if !bounds.is_frame {
            return Err(FrameError::NotAFrame {
                lower: bounds.lower,
            });
        }
        let inv = self.frame_operator().inverse()?;
        let vectors = self.vectors.iter().map(|v| inv.mul_vec(v)).collect();
        DiscreteFrame::new(self.dim, vectors)
    }

    pub fn is_riesz_basis(&self) -> Result<bool> {
        Ok(self.len() == self.dim && self.optimal_bounds()?.is_frame)
    }

    pub fn bessel_bound(&self) -> Result<f64> {
        Ok(self.optimal_bounds()?.upper)
    }

    pub fn scaled(&self, c: f64) -> DiscreteFrame {
        DiscreteFrame {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|x| c * x).collect())
                .collect(),
        }
    }

    /// `{E f_i}`.
    pub fn mapped(&self, e: &Matrix) -> Result<DiscreteFrame> {
        if e.rows() != self.dim || e.cols() != self.dim {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim,
                found: e.rows(),
            });
        }
        DiscreteFrame::new(
            self.dim,
            self.vectors.iter().map(|v| e.mul_vec(v)).collect(),
        )
    }

    /// Members at the given positions, in order.
    pub fn select(&self, indices: &[usize]) -> Result<DiscreteFrame> {
        let mut vectors = Vec::with_capacity(indices.len());
        for &i in indices {
            let v = self.vectors.get(i).ok_or_else(|| {
                FrameError::InvalidInput(format!(
                    "index {i} out of range for {} vectors",
                    self.len()
                ))
            })?;
            vectors.push(v.clone());
        }
        DiscreteFrame::new(self.dim, vectors)
    }
}
