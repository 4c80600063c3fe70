//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use woven_core::instances::{
    build_ex3_2, build_ex4_1, build_ex4_2, build_ex5_4, complement_family, plane_family,
    rotated_plane_family, DEFAULT_ROTATION,
};
use woven_core::linalg::sym_eig;
use woven_core::perturbation::{
    op_perturbation_check, proj_perturbation_check, pw_check, NormForm, PerturbationCertificate,
};
use woven_core::transforms::{
    apply_operator_discrete, remove_subset_check, t1_equivalence_report, OperatorE,
};
use woven_core::{FrameError, FusionFrame, Matrix, Partition, Subspace, WovenFamily};

const TOL: f64 = 1e-9;

#[derive(Default)]
struct Checks(Vec<(String, bool)>);

impl Checks {
    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.0.push((label.into(), ok));
    }

    fn within(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        self.check(
            format!("{label} runtime {elapsed:.2?} < {limit:?}"),
            elapsed < limit,
        );
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eigenvalues of `[[a, b], [b, c]]`, ascending.
fn eig2(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mid = (a + c) / 2.0;
    let rad = ((a - c) / 2.0).hypot(b);
    (mid - rad, mid + rad)
}

/// `Σ v vᵀ` for vectors in `R²`, as `(a, b, c)`.
fn outer2(vectors: &[Vec<f64>]) -> (f64, f64, f64) {
    vectors.iter().fold((0.0, 0.0, 0.0), |(a, b, c), v| {
        (a + v[0] * v[0], b + v[0] * v[1], c + v[1] * v[1])
    })
}

/// All weavings of a pair of `R²` systems, bounds by closed form.
fn weaving_interval2(f: &[Vec<f64>], g: &[Vec<f64>]) -> (f64, f64, usize) {
    let n = f.len();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for code in 0..(1usize << n) {
        let chosen: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                if code >> (n - 1 - i) & 1 == 0 {
                    f[i].clone()
                } else {
                    g[i].clone()
                }
            })
            .collect();
        let (a, b, c) = outer2(&chosen);
        let (l, h) = eig2(a, b, c);
        lo = lo.min(l.max(0.0));
        hi = hi.max(h);
    }
    (lo, hi, 1 << n)
}

/// Rank by Gaussian elimination with partial pivoting.
fn rank(vectors: &[Vec<f64>], dim: usize) -> usize {
    let mut rows: Vec<Vec<f64>> = vectors.to_vec();
    let scale = rows
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    let mut r = 0;
    for col in 0..dim {
        let Some(p) =
            (r..rows.len()).max_by(|&i, &j| rows[i][col].abs().total_cmp(&rows[j][col].abs()))
        else {
            break;
        };
        if rows[p][col].abs() <= 1e-9 * scale {
            continue;
        }
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let factor = row[col] / pivot[col];
                row.iter_mut()
                    .zip(&pivot)
                    .for_each(|(x, p)| *x -= factor * p);
            }
        }
        r += 1;
    }
    r
}

fn rayleigh(m: &Matrix, v: &[f64]) -> f64 {
    let mv = m.mul_vec(v);
    let num: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
    num / v.iter().map(|x| x * x).sum::<f64>()
}

fn unit_vector(r: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| r.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn e(d: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[k] = 1.0;
    v
}

fn criterion_1(c: &mut Checks) {
    let start = Instant::now();
    let inst = build_ex3_2().unwrap();
    let systems = inst.family.discrete_systems().unwrap();
    let (f, g) = (systems[0].vectors().to_vec(), systems[1].vectors().to_vec());
    let s = systems[0].frame_operator();
    let (a, b, cc) = outer2(&f);
    c.check(
        "S_F = [[13,6],[6,13]]",
        (a, b, cc) == (13.0, 6.0, 13.0)
            && s.max_abs_diff(&Matrix::from_rows(&[vec![13.0, 6.0], vec![6.0, 13.0]]).unwrap())
                <= 1e-12,
    );
    let bf = systems[0].optimal_bounds().unwrap();
    let bg = systems[1].optimal_bounds().unwrap();
    let of = eig2(a, b, cc);
    let (ga, gb, gc) = outer2(&g);
    let og = eig2(ga, gb, gc);
    c.check(
        "F optimal (7, 19)",
        (bf.lower - 7.0).abs() < TOL && (bf.upper - 19.0).abs() < TOL && (of.0 - 7.0).abs() < TOL,
    );
    c.check(
        "G optimal (1, 11)",
        (bg.lower - 1.0).abs() < TOL && (bg.upper - 11.0).abs() < TOL && (og.1 - 11.0).abs() < TOL,
    );
    c.check(
        "4 <= 7 and 19 <= 22",
        4.0 <= bf.lower + TOL && bf.upper <= 22.0 + TOL,
    );
    c.check(
        "1 <= 1 and 11 <= 19",
        1.0 <= bg.lower + TOL && bg.upper <= 19.0 + TOL,
    );
    let sigma1 = inst
        .family
        .weave(&Partition::from_one_based(&[1, 1, 2], 2).unwrap())
        .unwrap()
        .bounds()
        .unwrap();
    let r205 = 205f64.sqrt();
    let (sa, sb, sc) = outer2(&[f[0].clone(), f[1].clone(), g[2].clone()]);
    let os = eig2(sa, sb, sc);
    c.check(
        "sigma1 bounds (23 -+ sqrt 205)/2",
        (sigma1.lower - (23.0 - r205) / 2.0).abs() < TOL
            && (sigma1.upper - (23.0 + r205) / 2.0).abs() < TOL
            && (os.0 - sigma1.lower).abs() < TOL,
    );
    c.check(
        "sigma1 inside (4, 27)",
        sigma1.lower >= 4.0 - TOL && sigma1.upper <= 27.0 + TOL,
    );
    let report = inst.family.woven_bounds_exhaustive().unwrap();
    let (lo, hi, count) = weaving_interval2(&f, &g);
    c.check(
        "exhaustive over 8 partitions is woven",
        report.is_woven && report.partitions_examined == 8 && count == 8,
    );
    c.check(
        "universal interval matches enumeration oracle",
        (report.universal_lower - lo).abs() < TOL && (report.universal_upper - hi).abs() < TOL,
    );
    c.within("criterion 1", start.elapsed(), Duration::from_secs(1));
}

fn criterion_2(c: &mut Checks) {
    let start = Instant::now();
    let d = 6;
    let inst = build_ex4_1(d).unwrap();
    let (lf, lg) = inst.local.as_ref().unwrap();
    let flat_f = lf.flatten().unwrap().frame;
    let flat_g = lg.flatten().unwrap().frame;
    let bf = flat_f.optimal_bounds().unwrap();
    c.check(
        "flattened F Parseval",
        (bf.lower - 1.0).abs() <= TOL && (bf.upper - 1.0).abs() <= TOL,
    );
    let bg = flat_g.optimal_bounds().unwrap();
    let energy = |f: &[f64]| -> f64 {
        flat_g
            .vectors()
            .iter()
            .map(|g| g.iter().zip(f).map(|(a, b)| a * b).sum::<f64>().powi(2))
            .sum()
    };
    let mut r = rng(2);
    let identity_holds = (0..200).all(|_| {
        let f = unit_vector(&mut r, d);
        (energy(&f) - (2.0 - f[0] * f[0])).abs() < 1e-12
    });
    c.check("G energy = 2||f||^2 - |<f,e1>|^2", identity_holds);
    c.check(
        "flattened G bounds inside [1, 2]",
        bg.lower >= 1.0 - TOL
            && bg.upper <= 2.0 + TOL
            && (bg.lower - 1.0).abs() < TOL
            && (bg.upper - 2.0).abs() < TOL,
    );
    c.check("flattened G has 11 vectors", flat_g.len() == 11);
    let report = inst.family.woven_bounds_exhaustive().unwrap();
    c.check(
        "woven over 64 partitions within [1, 2]",
        report.is_woven
            && report.partitions_examined == 64
            && report.universal_lower >= 1.0 - TOL
            && report.universal_upper <= 2.0 + TOL,
    );
    let t1 = t1_equivalence_report(lf, lg).unwrap();
    c.check(
        "W.F.F verdict true via local frames",
        t1.fusion.woven && t1.vectors.woven && t1.agree,
    );
    c.within("criterion 2", start.elapsed(), Duration::from_secs(2));
}

fn criterion_3(c: &mut Checks) {
    let start = Instant::now();
    let d = 6;
    let inst = build_ex4_2(d).unwrap();
    let w = inst
        .family
        .find_nonwoven_witness(woven_core::weaving::DEFAULT_WITNESS_EPS)
        .unwrap();
    match w {
        Some(w) => {
            c.check(
                "witness assigns {1} to G and the rest to F",
                w.partition.one_based() == vec![2, 1, 1, 1, 1, 1],
            );
            let e1 = e(d, 0);
            c.check(
                "witness vector e1",
                w.vector.iter().zip(&e1).all(|(a, b)| (a - b).abs() < 1e-12),
            );
            c.check("witness value <= 1e-12", w.value <= 1e-12);
            let s = inst.family.weave(&w.partition).unwrap().operator();
            c.check("oracle energy of e1 is 0", rayleigh(&s, &e1).abs() <= 1e-12);
        }
        None => c.check("witness found", false),
    }
    let (lf, lg) = inst.local.as_ref().unwrap();
    let t1 = t1_equivalence_report(lf, lg).unwrap();
    c.check(
        "all three local-frame verdicts false",
        !t1.vectors.woven && !t1.fusion.woven && !t1.orthonormal.woven,
    );
    c.within("criterion 3", start.elapsed(), Duration::from_secs(2));
}

fn criterion_4(c: &mut Checks) {
    let start = Instant::now();
    let inst = build_ex5_4(6, 3.0).unwrap();
    let systems = inst.family.fusion_systems().unwrap();
    for (name, s) in ["W", "V"].iter().zip(systems) {
        let b = s.fusion_bounds().unwrap();
        c.check(
            format!("{name} fusion bounds (1, 1)"),
            (b.lower - 1.0).abs() <= TOL && (b.upper - 1.0).abs() <= TOL,
        );
    }
    let report = inst.family.woven_riesz_decomposition_check().unwrap();
    c.check(
        "woven Riesz decomposition over all 4 partitions",
        report.holds && report.partitions_checked == 4 && report.failing_count == 0,
    );
    c.within("criterion 4", start.elapsed(), Duration::from_secs(1));
}

fn criterion_5(c: &mut Checks) {
    let start = Instant::now();
    let inst = build_ex3_2().unwrap();
    let systems = inst.family.discrete_systems().unwrap();
    let (f, g) = (systems[0].vectors().to_vec(), systems[1].vectors().to_vec());
    let (a0, b0, _) = weaving_interval2(&f, &g);
    let mut r = rng(5);
    let mut accepted = 0;
    let mut all_contained = true;
    let mut library_agrees = true;
    while accepted < 50 {
        let m: Vec<Vec<f64>> = (0..2)
            .map(|_| (0..2).map(|_| r.random_range(-2.0..2.0)).collect())
            .collect();
        let ete = |i: usize, j: usize| m[0][i] * m[0][j] + m[1][i] * m[1][j];
        let (smin2, smax2) = eig2(ete(0, 0), ete(0, 1), ete(1, 1));
        if smin2 <= 0.0 || (smax2 / smin2).sqrt() > 1e3 {
            continue;
        }
        accepted += 1;
        let apply = |v: &Vec<f64>| {
            vec![
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ]
        };
        let ef: Vec<Vec<f64>> = f.iter().map(apply).collect();
        let eg: Vec<Vec<f64>> = g.iter().map(apply).collect();
        let (lo, hi, _) = weaving_interval2(&ef, &eg);
        let contained = lo - a0 * smin2 >= -TOL && b0 * smax2 - hi >= -TOL;
        all_contained &= contained;
        let op = OperatorE::new(Matrix::from_rows(&m).unwrap()).unwrap();
        let (image, report) = apply_operator_discrete(&op, &inst.family).unwrap();
        let ex = image.woven_bounds_exhaustive().unwrap();
        library_agrees &= report.contained
            && (ex.universal_lower - lo).abs() < 1e-8
            && (ex.universal_upper - hi).abs() < 1e-8 * hi.max(1.0)
            && (report.predicted_lower - a0 * smin2).abs() < 1e-8
            && (report.predicted_upper - b0 * smax2).abs() < 1e-8 * (b0 * smax2).max(1.0);
    }
    c.check(
        "image intervals inside [A'/||E^-1||^2, B'||E||^2] for 50 operators",
        all_contained,
    );
    c.check(
        "library image bounds match closed-form oracle",
        library_agrees,
    );
    c.within("criterion 5", start.elapsed(), Duration::from_secs(10));
}

fn criterion_6(c: &mut Checks) {
    let mut r = rng(6);
    let mut deficient = 0;
    let mut agree = 0;
    for trial in 0..100 {
        let d = 3 + trial % 4;
        let n = 2 + trial % 3;
        let force = trial % 4 == 0;
        let axis = unit_vector(&mut r, d);
        let mut union = Vec::new();
        let mut subspaces = Vec::new();
        for _ in 0..n {
            let k = r.random_range(0..=2usize);
            let mut span: Vec<Vec<f64>> = (0..k).map(|_| unit_vector(&mut r, d)).collect();
            if force {
                for v in &mut span {
                    let p: f64 = v.iter().zip(&axis).map(|(a, b)| a * b).sum();
                    v.iter_mut().zip(&axis).for_each(|(x, a)| *x -= p * a);
                }
            }
            union.extend(span.clone());
            subspaces.push(Subspace::from_spanning(d, &span).unwrap());
        }
        let weights: Vec<f64> = (0..n).map(|_| r.random_range(0.5..2.0)).collect();
        let frame = FusionFrame::from_parts(d, subspaces, weights).unwrap();
        let oracle = rank(&union, d) == d;
        if !oracle {
            deficient += 1;
        }
        let onto = frame.synthesis_is_onto().unwrap();
        let is_frame = frame.fusion_bounds().unwrap().is_frame;
        if onto == is_frame && is_frame == oracle {
            agree += 1;
        }
    }
    c.check(
        format!("{deficient} rank-deficient instances (>= 20)"),
        deficient >= 20,
    );
    c.check(
        format!("surjectivity agrees with frame property in {agree}/100"),
        agree == 100,
    );
}

fn all_hold(certs: &[PerturbationCertificate]) -> bool {
    certs.iter().all(|c| c.hypothesis_holds)
}

fn criterion_7(c: &mut Checks) {
    let samples = 500;
    let w = plane_family().unwrap();
    let exhaustive = |v: &FusionFrame| {
        let r = WovenFamily::new_fusion(vec![w.clone(), v.clone()])
            .unwrap()
            .woven_bounds_exhaustive()
            .unwrap();
        (r.universal_lower, r.universal_upper)
    };
    let run_all = |v: &FusionFrame, seed: u64| {
        vec![
            pw_check(&w, v, 0.01, 0.01, 0.01, samples, seed).unwrap(),
            op_perturbation_check(&w, v, 0.01, 0.01, 0.01, samples, seed).unwrap(),
            proj_perturbation_check(&w, v, 0.5, NormForm::Unsquared, samples, seed).unwrap(),
        ]
    };

    let same = run_all(&w, 71);
    let (lo, hi) = exhaustive(&w);
    c.check("identical family: all three checkers hold", all_hold(&same));
    c.check(
        "identical family: left-hand sides vanish",
        same.iter().all(|x| x.max_violation <= 0.0),
    );
    c.check(
        "identical family: predictions contain the exhaustive interval",
        same.iter()
            .all(|x| x.predicted_lower <= lo + TOL && hi <= x.predicted_upper + TOL),
    );

    let rotated = rotated_plane_family(DEFAULT_ROTATION).unwrap();
    let (lo, hi) = exhaustive(&rotated);
    for cert in run_all(&rotated, 72) {
        c.check(
            format!(
                "rotated planes: {:?} holds (max_violation {:.3e})",
                cert.method, cert.max_violation
            ),
            cert.hypothesis_holds,
        );
        c.check(
            format!(
                "rotated planes: {:?} prediction contains exhaustive interval",
                cert.method
            ),
            cert.predicted_lower <= lo + TOL && hi <= cert.predicted_upper + TOL,
        );
    }

    let comp = complement_family().unwrap();
    for cert in run_all(&comp, 73) {
        c.check(
            format!(
                "complements: {:?} fails with positive max_violation",
                cert.method
            ),
            !cert.hypothesis_holds && cert.max_violation > 0.0,
        );
    }
}

fn random_fusion(r: &mut ChaCha8Rng, d: usize, n: usize, max_rank: usize) -> FusionFrame {
    let subspaces = (0..n)
        .map(|_| {
            let k = r.random_range(1..=max_rank);
            let span: Vec<Vec<f64>> = (0..k).map(|_| unit_vector(r, d)).collect();
            Subspace::from_spanning(d, &span).unwrap()
        })
        .collect();
    let weights = (0..n).map(|_| r.random_range(0.3..1.5)).collect();
    FusionFrame::from_parts(d, subspaces, weights).unwrap()
}

fn criterion_8(c: &mut Checks) {
    let mut r = rng(8);
    let mut bessel_ok = true;
    for _ in 0..100 {
        let d = r.random_range(2..=4);
        let n = r.random_range(2..=5);
        let m = r.random_range(2..=3);
        let systems: Vec<FusionFrame> = (0..m).map(|_| random_fusion(&mut r, d, n, d)).collect();
        let sum: f64 = systems
            .iter()
            .map(|s| s.fusion_bounds().unwrap().upper)
            .sum();
        let family = WovenFamily::new_fusion(systems).unwrap();
        let report = family.woven_bounds_exhaustive().unwrap();
        bessel_ok &= report.universal_upper <= sum + TOL;
    }
    c.check(
        "every weaving's Bessel bound <= sum of member bounds (100 trials)",
        bessel_ok,
    );

    let mut applicable = 0;
    let mut removal_ok = true;
    for _ in 0..60 {
        let d = 2;
        let n = 6;
        let family = WovenFamily::new_fusion(vec![
            random_fusion(&mut r, d, n, 1),
            random_fusion(&mut r, d, n, 1),
        ])
        .unwrap();
        let j = r.random_range(0..n);
        match remove_subset_check(&family, &[j]) {
            Ok(rep) => {
                applicable += 1;
                let keep: Vec<usize> = (0..n).filter(|&i| i != j).collect();
                let restricted = family
                    .restrict(&keep)
                    .unwrap()
                    .woven_bounds_exhaustive()
                    .unwrap();
                removal_ok &= rep.contained
                    && rep.removed_bound < rep.full_lower
                    && restricted.universal_lower >= rep.full_lower - rep.removed_bound - TOL
                    && restricted.universal_upper <= rep.full_upper + TOL;
            }
            Err(FrameError::HypothesisNotMet { .. }) => {}
            Err(_) => removal_ok = false,
        }
    }
    c.check(
        format!("removal interval containment ({applicable} applicable cases)"),
        removal_ok && applicable >= 10,
    );

    let mut subset_ok = true;
    for _ in 0..50 {
        let d = 3;
        let n = 5;
        let family = WovenFamily::new_fusion(vec![
            random_fusion(&mut r, d, n, 2),
            random_fusion(&mut r, d, n, 2),
        ])
        .unwrap();
        let rep = family.subset_extension_check(&[0, 1, 3]).unwrap();
        subset_ok &= rep.lower_preserved && rep.full_lower >= rep.subset_lower - TOL;
    }
    c.check(
        "subset extension preserves the lower bound (50 trials)",
        subset_ok,
    );
}

fn criterion_9(c: &mut Checks) {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    let mut sandwich = true;
    for trial in 0..50 {
        let d = 1 + trial % 16;
        let mut a = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..=i {
                let x = r.random_range(-1.0..1.0);
                a[(i, j)] = x;
                a[(j, i)] = x;
            }
        }
        let eig = sym_eig(&a).unwrap();
        let scale = eig.max().abs().max(eig.min().abs()).max(1e-300);
        let (mut qmin, mut qmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..10_000 {
            let q = rayleigh(&a, &unit_vector(&mut r, d));
            qmin = qmin.min(q);
            qmax = qmax.max(q);
        }
        sandwich &= qmin >= eig.min() - 1e-9 * scale && qmax <= eig.max() + 1e-9 * scale;
        qmin = qmin.min(rayleigh(&a, &eig.min_vector()));
        qmax = qmax.max(rayleigh(&a, &eig.max_vector()));
        worst = worst
            .max((qmin - eig.min()).abs() / scale)
            .max((qmax - eig.max()).abs() / scale);
    }
    c.check(
        "all sampled Rayleigh quotients lie in [lambda_min, lambda_max]",
        sandwich,
    );
    c.check(
        format!("extremal Rayleigh quotients match eigenvalues (worst rel. error {worst:.1e})"),
        worst <= 1e-9,
    );
}

fn criterion_10(c: &mut Checks) {
    use common::*;
    let ex3 = write_family(&build_ex3_2().unwrap().family);
    let ex42 = write_family(&build_ex4_2(6).unwrap().family);
    let w = plane_family().unwrap();
    let rot = write_family(
        &WovenFamily::new_fusion(vec![
            w.clone(),
            rotated_plane_family(DEFAULT_ROTATION).unwrap(),
        ])
        .unwrap(),
    );
    let bad = write_text("{ not json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["analyze", path(&ex3)],
        vec!["analyze", path(&ex42)],
        vec!["analyze", path(&bad)],
        vec!["woven", path(&ex3), "--exhaustive"],
        vec!["woven", path(&ex42)],
        vec!["woven", path(&ex3), "--samples", "100", "--seed", "7"],
        vec!["woven", path(&ex42), "--samples", "50", "--seed", "11"],
        vec![
            "perturb",
            path(&rot),
            "--method",
            "pw",
            "--lambda1",
            "0.01",
            "--lambda2",
            "0.01",
            "--mu",
            "0.01",
            "--seed",
            "5",
        ],
        vec![
            "perturb",
            path(&rot),
            "--method",
            "op",
            "--lambda",
            "0.01",
            "--mu",
            "0.01",
            "--gamma",
            "0.01",
            "--seed",
            "5",
        ],
        vec![
            "perturb",
            path(&rot),
            "--method",
            "proj",
            "--K",
            "0.5",
            "--seed",
            "5",
        ],
        vec![
            "perturb",
            path(&rot),
            "--method",
            "proj",
            "--K",
            "0.5",
            "--squared",
            "--seed",
            "5",
        ],
        vec!["reproduce", "--id", "ex3_2"],
        vec!["reproduce", "--id", "ex4_1", "--dim", "6"],
        vec!["reproduce", "--id", "ex4_2", "--dim", "6"],
        vec!["reproduce", "--id", "ex5_4", "--dim", "6"],
    ];
    for args in commands {
        let a = woven(&args);
        let b = woven(&args);
        c.check(
            format!("`woven {}` byte-identical (exit {})", args[0], a.code),
            a.stdout == b.stdout && a.stderr == b.stderr && a.code == b.code,
        );
    }
}

fn main() {
    type Criterion = fn(&mut Checks);
    let criteria: [(&str, Criterion); 10] = [
        ("first example reproduction", criterion_1),
        ("shift example at d = 6", criterion_2),
        ("missing projection at d = 6", criterion_3),
        ("even/odd decompositions at d = 6", criterion_4),
        ("invertible operator images", criterion_5),
        ("fusion synthesis surjectivity", criterion_6),
        ("perturbation suite", criterion_7),
        ("weaving bound suite", criterion_8),
        ("Rayleigh oracle equivalence", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut checks)));
        if let Err(p) = outcome {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            checks.check(format!("panicked: {msg}"), false);
        }
        let pass = !checks.0.is_empty() && checks.0.iter().all(|(_, ok)| *ok);
        println!(
            "criterion {}: {} {title}",
            k + 1,
            if pass { "PASS" } else { "FAIL" }
        );
        for (label, ok) in &checks.0 {
            println!("    [{}] {label}", if *ok { "ok" } else { "FAILED" });
        }
        if !pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
