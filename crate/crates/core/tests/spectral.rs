mod common;

use common::*;
use proptest::prelude::*;
use woven_core::linalg::{orthonormalize, projector, sym_eig, RANK_TOL};
use woven_core::{DiscreteFrame, FrameError, Matrix};

#[test]
fn sym_eig_matches_nalgebra_on_random_matrices() {
    let mut r = rng(11);
    for trial in 0..50 {
        let d = 1 + trial % 16;
        let a = random_symmetric(&mut r, d);
        let eig = sym_eig(&a).unwrap();
        let oracle = oracle_eigenvalues(&a);
        let scale = a.frobenius_norm().max(1.0);
        for (x, y) in eig.eigenvalues.iter().zip(&oracle) {
            assert!((x - y).abs() <= 1e-10 * scale, "d={d}: {x} vs {y}");
        }
        assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-10 * scale);
    }
}

#[test]
fn eigenvectors_are_orthonormal_and_sign_normalized() {
    let mut r = rng(12);
    let a = random_symmetric(&mut r, 9);
    let eig = sym_eig(&a).unwrap();
    let v = &eig.eigenvectors;
    assert!(v.transpose().matmul(v).max_abs_diff(&Matrix::identity(9)) < 1e-10);
    for k in 0..9 {
        let col = v.column(k);
        let big = col
            .iter()
            .copied()
            .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        assert!(big > 0.0);
    }
}

#[test]
fn repeated_eigenvalues_are_resolved() {
    let a = Matrix::diagonal(&[2.0, 2.0, 2.0, -1.0]);
    let eig = sym_eig(&a).unwrap();
    assert_eq!(eig.eigenvalues, vec![-1.0, 2.0, 2.0, 2.0]);
}

#[test]
fn asymmetric_input_is_rejected() {
    let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
    assert!(matches!(sym_eig(&a), Err(FrameError::NotSymmetric { .. })));
}

#[test]
fn example_frame_operator_from_outer_products() {
    let f = vec![vec![0.0, 2.0], vec![3.0, 0.0], vec![2.0, 3.0]];
    let s = outer_sum(2, &f);
    let frame = DiscreteFrame::new(2, f).unwrap();
    assert!(frame.frame_operator().max_abs_diff(&s) <= 1e-12);
    let (a, b, c) = (s[(0, 0)], s[(0, 1)], s[(1, 1)]);
    let mid = (a + c) / 2.0;
    let rad = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    let bounds = frame.optimal_bounds().unwrap();
    assert!((bounds.lower - (mid - rad)).abs() < 1e-12);
    assert!((bounds.upper - (mid + rad)).abs() < 1e-12);
}

#[test]
fn frame_bounds_match_oracle_and_witnesses_attain_them() {
    let mut r = rng(13);
    for trial in 0..30 {
        let d = 2 + trial % 6;
        let n = d + trial % 4;
        let vectors = random_vectors(&mut r, n, d);
        let frame = DiscreteFrame::new(d, vectors.clone()).unwrap();
        let b = frame.optimal_bounds().unwrap();
        let (lo, hi) = oracle_extremes(&outer_sum(d, &vectors));
        assert!((b.lower - lo).abs() < 1e-9 && (b.upper - hi).abs() < 1e-9);
        assert!((frame.energy(&b.witness_low) - b.lower).abs() < 1e-9);
        assert!((frame.energy(&b.witness_high) - b.upper).abs() < 1e-9);
    }
}

#[test]
fn dual_frame_reconstructs() {
    let mut r = rng(14);
    let frame = DiscreteFrame::new(4, random_vectors(&mut r, 7, 4)).unwrap();
    let dual = frame.dual_frame().unwrap();
    for _ in 0..20 {
        let f = random_vector(&mut r, 4);
        let mut rec = [0.0; 4];
        for (g, h) in dual.vectors().iter().zip(frame.vectors()) {
            let c: f64 = f.iter().zip(g).map(|(a, b)| a * b).sum();
            rec.iter_mut().zip(h).for_each(|(x, y)| *x += c * y);
        }
        for (a, b) in rec.iter().zip(&f) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn non_spanning_family_has_no_dual() {
    let frame = DiscreteFrame::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
    assert!(!frame.optimal_bounds().unwrap().is_frame);
    assert!(matches!(
        frame.dual_frame(),
        Err(FrameError::NotAFrame { .. })
    ));
}

#[test]
fn orthonormalization_rank_and_projector_match_svd() {
    let mut r = rng(15);
    for trial in 0..40 {
        let d = 3 + trial % 5;
        let k = 1 + trial % 4;
        let mut vectors = random_vectors(&mut r, k, d);
        if trial % 3 == 0 {
            let extra: Vec<f64> = vectors[0]
                .iter()
                .zip(&vectors[k - 1])
                .map(|(a, b)| 2.0 * a - b)
                .collect();
            vectors.push(extra);
        }
        let (basis, rank) = orthonormalize(&vectors, RANK_TOL).unwrap();
        assert_eq!(rank, oracle_rank(&vectors, d));
        let p = projector(&basis).unwrap();
        assert!(p.max_abs_diff(&oracle_projector(&vectors, d)) < 1e-9);
        assert!(p.matmul(&p).max_abs_diff(&p) < 1e-10);
        assert!(p.asymmetry() < 1e-12);
    }
}

fn frame_strategy() -> impl Strategy<Value = (usize, Vec<Vec<f64>>)> {
    (2usize..6).prop_flat_map(|d| {
        (
            Just(d),
            prop::collection::vec(prop::collection::vec(-3.0f64..3.0, d), d..d + 5),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_is_sandwiched_by_bounds((d, vectors) in frame_strategy(), f in prop::collection::vec(-1.0f64..1.0, 6)) {
        let frame = DiscreteFrame::new(d, vectors).unwrap();
        let b = frame.optimal_bounds().unwrap();
        let f = &f[..d];
        let nf: f64 = f.iter().map(|x| x * x).sum();
        let e = frame.energy(f);
        let slack = 1e-9 * (1.0 + b.upper) * nf.max(1.0);
        prop_assert!(e >= b.lower * nf - slack);
        prop_assert!(e <= b.upper * nf + slack);
    }

    #[test]
    fn scaling_multiplies_bounds_by_square((d, vectors) in frame_strategy(), c in 0.1f64..4.0) {
        let frame = DiscreteFrame::new(d, vectors).unwrap();
        let b = frame.optimal_bounds().unwrap();
        let s = frame.scaled(c).optimal_bounds().unwrap();
        let tol = 1e-9 * (1.0 + c * c * b.upper);
        prop_assert!((s.lower - c * c * b.lower).abs() <= tol);
        prop_assert!((s.upper - c * c * b.upper).abs() <= tol);
    }

    #[test]
    fn trace_equals_total_squared_norm((d, vectors) in frame_strategy()) {
        let frame = DiscreteFrame::new(d, vectors.clone()).unwrap();
        let total: f64 = vectors.iter().flatten().map(|x| x * x).sum();
        prop_assert!((frame.frame_operator().trace() - total).abs() <= 1e-9 * total.max(1.0));
    }
}
