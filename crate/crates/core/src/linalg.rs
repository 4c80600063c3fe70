//! Dense real linear algebra for small problems.
//!
//! Everything here works on row-major `f64` storage and targets ambient
//! dimensions up to a few dozen. The symmetric eigensolver is a cyclic Jacobi
//! iteration; orthonormalization is modified Gram-Schmidt with one
//! re-orthogonalization pass.

use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};

/// Default rank tolerance for [`orthonormalize`].
pub const RANK_TOL: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the full Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-10;
const ORTHONORMAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-10;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scaled(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| x * c).collect()
}

/// Standard basis vector `e_k` of length `dim` (0-based `k`).
pub fn unit(dim: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[k] = 1.0;
    v
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Builds a matrix from row vectors, which must share a length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(FrameError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a `dim x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Matrix product. Panics on incompatible shapes, which is a programming error.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `vᵀ A v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        dot(v, &self.mul_vec(v))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            data: self.data.iter().map(|x| x * c).collect(),
            ..*self
        }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// `self += c · v wᵀ`.
    pub fn add_outer(&mut self, c: f64, v: &[f64], w: &[f64]) {
        assert_eq!((self.rows, self.cols), (v.len(), w.len()));
        for (i, &vi) in v.iter().enumerate() {
            let cv = c * vi;
            if cv == 0.0 {
                continue;
            }
            for (j, &wj) in w.iter().enumerate() {
                self.data[i * self.cols + j] += cv * wj;
            }
        }
    }

    /// Horizontal concatenation `[A | B | ...]`.
    pub fn hstack(rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(FrameError::DimensionMismatch {
                    expected: rows,
                    found: b.rows,
                });
            }
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `‖A − Aᵀ‖_max`; infinite for non-square input.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        dev
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(FrameError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        if !self.is_finite() {
            return Err(FrameError::NonFinite);
        }
        let n = self.rows;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].abs().total_cmp(&a[(y, col)].abs()))
                .unwrap_or(col);
            if a[(pivot, col)].abs() <= PIVOT_TOL * scale {
                return Err(FrameError::SingularOperator);
            }
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] -= f * a[(col, j)];
                    inv[(r, j)] -= f * inv[(col, j)];
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Full spectrum of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, paired with `eigenvalues`.
    pub eigenvectors: Matrix,
    /// `max_k ‖A v_k − λ_k v_k‖`.
    pub residual: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    pub fn min_vector(&self) -> Vec<f64> {
        self.vector(0)
    }

    pub fn max_vector(&self) -> Vec<f64> {
        self.vector(self.eigenvalues.len().saturating_sub(1))
    }

    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.eigenvalues.len();
        let mut out = Matrix::zeros(n, n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let v = self.vector(k);
            out.add_outer(lam, &v, &v);
        }
        out
    }
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Output is deterministic: eigenvalues ascending (ties keep rotation order),
/// each eigenvector signed so its largest-magnitude entry is positive.
pub fn sym_eig(a: &Matrix) -> Result<Spectrum> {
    if !a.is_finite() {
        return Err(FrameError::NonFinite);
    }
    let deviation = a.asymmetry();
    if deviation > SYMMETRY_TOL {
        return Err(FrameError::NotSymmetric { deviation });
    }
    let n = a.rows();
    let mut m = a.clone();
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let target = JACOBI_REL_TOL * m.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(FrameError::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].total_cmp(&m[(y, y)]).then(x.cmp(&y)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| m[(k, k)]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        let lead = col.iter().copied().fold(
            0.0_f64,
            |best, x| if x.abs() > best.abs() { x } else { best },
        );
        if lead < 0.0 {
            col.iter_mut().for_each(|x| *x = -*x);
        }
        for (i, x) in col.into_iter().enumerate() {
            eigenvectors[(i, dst)] = x;
        }
    }

    let residual = (0..n)
        .map(|k| {
            let vk = eigenvectors.column(k);
            let av = a.mul_vec(&vk);
            norm(&sub(&av, &scaled(&vk, eigenvalues[k])))
        })
        .fold(0.0, f64::max);

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `m[p][q]`, accumulated into `v`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = m.rows();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Orthonormal basis (as columns) for the span of `spanning`.
///
/// Zero vectors are skipped. A direction counts as dependent when its
/// residual after projection has norm `<= tol * (1 + max input norm)`.
pub fn orthonormalize(spanning: &[Vec<f64>], tol: f64) -> Result<(Matrix, usize)> {
    let first = spanning.first().ok_or(FrameError::EmptyInput)?;
    let dim = first.len();
    if let Some(bad) = spanning.iter().find(|v| v.len() != dim) {
        return Err(FrameError::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    if spanning.iter().flatten().any(|x| !x.is_finite()) {
        return Err(FrameError::NonFinite);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(FrameError::InvalidInput(format!(
            "rank tolerance {tol} must be positive"
        )));
    }
    let max_norm = spanning.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let threshold = tol * (1.0 + max_norm);

    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in spanning {
        if basis.len() == dim {
            break;
        }
        let mut r = v.clone();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let rn = norm(&r);
        if rn > threshold {
            r.iter_mut().for_each(|x| *x /= rn);
            basis.push(r);
        }
    }
    let rank = basis.len();
    Ok((Matrix::from_columns(dim, &basis)?, rank))
}

/// `max |BᵀB − I|`.
pub fn orthonormality_defect(basis: &Matrix) -> f64 {
    let g = basis.transpose().matmul(basis);
    g.max_abs_diff(&Matrix::identity(basis.cols()))
}

/// Orthogonal projector `B Bᵀ` onto the column span of an orthonormal basis.
pub fn projector(basis: &Matrix) -> Result<Matrix> {
    if !basis.is_finite() {
        return Err(FrameError::NonFinite);
    }
    let deviation = orthonormality_defect(basis);
    if deviation > ORTHONORMAL_TOL {
        return Err(FrameError::NotOrthonormal { deviation });
    }
    Ok(basis.matmul(&basis.transpose()))
}

/// Spectral norm `λ_max(AᵀA)^{1/2}`.
pub fn operator_norm(a: &Matrix) -> Result<f64> {
    let g = a.transpose().matmul(a);
    Ok(sym_eig(&g)?.max().max(0.0).sqrt())
}
