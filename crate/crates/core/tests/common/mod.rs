#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use woven_core::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Ascending eigenvalues from nalgebra's symmetric solver.
pub fn oracle_eigenvalues(m: &Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(to_na(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn oracle_extremes(m: &Matrix) -> (f64, f64) {
    let ev = oracle_eigenvalues(m);
    (ev[0].max(0.0), *ev.last().unwrap())
}

pub fn oracle_rank(vectors: &[Vec<f64>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let a = DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i]);
    a.rank(1e-9)
}

/// `Σ c v vᵀ` summed directly.
pub fn outer_sum(dim: usize, vectors: &[Vec<f64>]) -> Matrix {
    let mut s = Matrix::zeros(dim, dim);
    for v in vectors {
        for i in 0..dim {
            for j in 0..dim {
                s[(i, j)] += v[i] * v[j];
            }
        }
    }
    s
}

pub fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| r.random_range(-1.0..1.0)).collect()
}

pub fn random_vectors(r: &mut ChaCha8Rng, count: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..count).map(|_| random_vector(r, dim)).collect()
}

pub fn random_symmetric(r: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..=i {
            let x = r.random_range(-1.0..1.0);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

/// Orthogonal projector onto the span of `vectors`, through nalgebra's SVD.
pub fn oracle_projector(vectors: &[Vec<f64>], dim: usize) -> Matrix {
    let mut p = Matrix::zeros(dim, dim);
    if vectors.is_empty() {
        return p;
    }
    let a = DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i]);
    let svd = a.svd(true, false);
    let u = svd.u.unwrap();
    let smax = svd.singular_values.max();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > 1e-9 * smax.max(1.0) {
            for i in 0..dim {
                for j in 0..dim {
                    p[(i, j)] += u[(i, k)] * u[(j, k)];
                }
            }
        }
    }
    p
}

pub fn rayleigh(m: &Matrix, v: &[f64]) -> f64 {
    let mv = m.mul_vec(v);
    let num: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
    let den: f64 = v.iter().map(|a| a * a).sum();
    num / den
}
