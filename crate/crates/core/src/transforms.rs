//! Maps between woven systems: operator images, conjugation by a self-adjoint
//! operator, intersection with a subspace, local frames inside the members of
//! a fusion family, and removal of indices.

use serde::Serialize;

use crate::error::{FrameError, Result};
use crate::frames::{bounds_define_frame, DiscreteFrame};
use crate::fusion::{FusionFrame, FusionMember, Subspace};
use crate::linalg::{operator_norm, sym_eig, Matrix};
use crate::sampling::unit_vector;
use crate::weaving::{Contributions, Partition, WovenFamily, WovenReport, DEFAULT_MAX_PARTITIONS};

const CONTAINMENT_SLACK: f64 = 1e-9;
const SELF_ADJOINT_TOL: f64 = 1e-9;
const INVARIANCE_TOL: f64 = 1e-8;
const NULLSPACE_EIG_TOL: f64 = 1e-10;
const COMMUTE_TOL: f64 = 1e-9;

/// Samples drawn by [`intersection_report`].
pub const INTERSECTION_SAMPLES: usize = 200;

fn within_interval(lower: f64, upper: f64, lo: f64, hi: f64) -> bool {
    let slack = CONTAINMENT_SLACK * hi.abs().max(1.0);
    lower >= lo - slack && upper <= hi + slack
}

/// An invertible operator `E` with cached inverse and norms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorE {
    pub matrix: Matrix,
    pub inv: Matrix,
    pub norm: f64,
    pub inv_norm: f64,
}

impl OperatorE {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let inv = matrix.inverse()?;
        let norm = operator_norm(&matrix)?;
        let inv_norm = operator_norm(&inv)?;
        Ok(Self {
            matrix,
            inv,
            norm,
            inv_norm,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(Matrix::identity(dim)).expect("identity is invertible")
    }

    pub fn scalar(dim: usize, c: f64) -> Result<Self> {
        Self::new(Matrix::identity(dim).scale(c))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `κ(E) = ‖E‖‖E⁻¹‖`.
    pub fn condition_number(&self) -> f64 {
        self.norm * self.inv_norm
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(FrameError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Bounds of `{E f_ij}` next to the interval predicted from the original family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorImageReport {
    pub original: WovenReport,
    pub image: WovenReport,
    pub e_norm: f64,
    pub e_inv_norm: f64,
    pub predicted_lower: f64,
    pub predicted_upper: f64,
    pub contained: bool,
}

/// Applies `E` to every vector of a woven discrete family.
///
/// The original family must be woven; the image's universal bounds are then
/// predicted to lie in `[𝒜′/‖E⁻¹‖², ℬ′‖E‖²]`.
pub fn apply_operator_discrete(
    e: &OperatorE,
    family: &WovenFamily,
) -> Result<(WovenFamily, OperatorImageReport)> {
    let systems = family.discrete_systems()?;
    e.check_dim(family.dim())?;
    let original = family.woven_bounds_exhaustive()?;
    if !original.is_woven {
        return Err(FrameError::NotAFrame {
            lower: original.universal_lower,
        });
    }
    let image_family = WovenFamily::new_discrete(
        systems
            .iter()
            .map(|f| f.mapped(&e.matrix))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let image = image_family.woven_bounds_exhaustive()?;
    let predicted_lower = original.universal_lower / (e.inv_norm * e.inv_norm);
    let predicted_upper = original.universal_upper * e.norm * e.norm;
    let contained = within_interval(
        image.universal_lower,
        image.universal_upper,
        predicted_lower,
        predicted_upper,
    );
    let report = OperatorImageReport {
        original,
        image,
        e_norm: e.norm,
        e_inv_norm: e.inv_norm,
        predicted_lower,
        predicted_upper,
        contained,
    };
    Ok((image_family, report))
}

/// Result of comparing the weaving operator of `{E W_i} ∪ {E V_i}` with `E S_σ E⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugationReport {
    pub residual: f64,
    pub safe_class: bool,
    pub symmetry_deviation: f64,
    pub invariance_deviation: f64,
    pub notes: Vec<String>,
}

fn is_coordinate_subspace(s: &Subspace) -> bool {
    s.basis_vectors().iter().all(|b| {
        let big = b.iter().filter(|x| x.abs() > 1e-12).count();
        big == 1 && b.iter().any(|x| (x.abs() - 1.0).abs() <= 1e-12)
    })
}

fn is_positive_diagonal(m: &Matrix) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            if i == j {
                m[(i, j)] > 0.0
            } else {
                m[(i, j)] == 0.0
            }
        })
    })
}

/// Checks that the weaving of the image family has operator `E S_σ E⁻¹`,
/// where `S_σ = Σ_σ ν_i² P_{W_i} + Σ_σᶜ μ_i² P_{V_i}` is the original weaving operator.
pub fn conjugation_check(
    e: &OperatorE,
    family: &WovenFamily,
    p: &Partition,
) -> Result<ConjugationReport> {
    let systems = family.fusion_systems()?;
    if systems.len() != 2 {
        return Err(FrameError::RequiresTwoSystems {
            found: systems.len(),
        });
    }
    e.check_dim(family.dim())?;
    let symmetry_deviation = e.matrix.asymmetry();
    if symmetry_deviation > SELF_ADJOINT_TOL {
        return Err(FrameError::NotSelfAdjoint {
            deviation: symmetry_deviation,
        });
    }
    let ete = e.matrix.transpose().matmul(&e.matrix);
    let mut invariance_deviation: f64 = 0.0;
    for sys in systems {
        for m in sys.members() {
            let b = m.subspace.basis();
            let moved = ete.matmul(b);
            let leak = moved.sub(&m.subspace.projector().matmul(&moved));
            invariance_deviation = invariance_deviation.max(leak.max_abs());
        }
    }
    if invariance_deviation > INVARIANCE_TOL {
        return Err(FrameError::InvarianceViolated {
            deviation: invariance_deviation,
        });
    }

    let image = WovenFamily::new_fusion(
        systems
            .iter()
            .map(|sys| {
                let members = sys
                    .members()
                    .iter()
                    .map(|m| {
                        Ok(FusionMember {
                            subspace: m.subspace.mapped(&e.matrix)?,
                            weight: m.weight,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                FusionFrame::new(sys.dim(), members)
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    let s_image = image.contributions().operator(p)?;
    let s_sigma = family.contributions().operator(p)?;
    let conjugated = e.matrix.matmul(&s_sigma).matmul(&e.inv);
    let residual = s_image.max_abs_diff(&conjugated);

    let safe_class = is_positive_diagonal(&e.matrix)
        && systems.iter().all(|sys| {
            sys.members()
                .iter()
                .all(|m| is_coordinate_subspace(&m.subspace))
        });
    let mut notes = vec![
        "S_sigma is the weaving operator of the original subspaces, built from local orthonormal bases".to_string(),
    ];
    if !safe_class {
        notes.push("operator or subspaces outside the diagonal/coordinate class; residual is informational".to_string());
    }
    Ok(ConjugationReport {
        residual,
        safe_class,
        symmetry_deviation,
        invariance_deviation,
        notes,
    })
}

/// `W ∩ K`, from the null space of `[B_W | −B_K]`.
pub fn intersect_subspaces(w: &Subspace, k: &Subspace) -> Result<Subspace> {
    if w.dim() != k.dim() {
        return Err(FrameError::DimensionMismatch {
            expected: w.dim(),
            found: k.dim(),
        });
    }
    let dim = w.dim();
    let (rw, rk) = (w.rank(), k.rank());
    if rw == 0 || rk == 0 {
        return Ok(Subspace::zero(dim));
    }
    let stacked = Matrix::hstack(dim, &[w.basis(), &k.basis().scale(-1.0)])?;
    let gram = stacked.transpose().matmul(&stacked);
    let eig = sym_eig(&gram)?;
    let mut directions = Vec::new();
    for (idx, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam > NULLSPACE_EIG_TOL {
            break;
        }
        let z = eig.vector(idx);
        directions.push(w.basis().mul_vec(&z[..rw]));
    }
    Subspace::from_spanning(dim, &directions)
}

/// Every member subspace replaced by its intersection with `K`, weights kept.
pub fn intersect_family(family: &WovenFamily, k: &Subspace) -> Result<WovenFamily> {
    let systems = family.fusion_systems()?;
    if k.dim() != family.dim() {
        return Err(FrameError::DimensionMismatch {
            expected: family.dim(),
            found: k.dim(),
        });
    }
    if k.rank() == 0 {
        return Err(FrameError::InvalidInput(
            "subspace K must be nontrivial".into(),
        ));
    }
    let mut any = false;
    let mut out = Vec::with_capacity(systems.len());
    for sys in systems {
        let mut members = Vec::with_capacity(sys.len());
        for m in sys.members() {
            let subspace = intersect_subspaces(&m.subspace, k)?;
            any |= subspace.rank() > 0;
            members.push(FusionMember {
                subspace,
                weight: m.weight,
            });
        }
        out.push(FusionFrame::new(sys.dim(), members)?);
    }
    if !any {
        return Err(FrameError::EmptyIntersection);
    }
    WovenFamily::new_fusion(out)
}

/// Universal bounds of the intersected family on `K` against those of the original family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionReport {
    pub k_rank: usize,
    pub original_lower: f64,
    pub original_upper: f64,
    pub restricted_lower: f64,
    pub restricted_upper: f64,
    pub restricted_woven: bool,
    pub commuting: bool,
    pub holds: bool,
    pub samples: usize,
    pub seed: u64,
    pub mismatches: usize,
}

/// Intersects with `K`, restricts the weaving operators to `K`, and compares
/// with the original universal interval. Sample mismatches are counted, not raised.
pub fn intersection_report(
    family: &WovenFamily,
    k: &Subspace,
    seed: u64,
) -> Result<(WovenFamily, IntersectionReport)> {
    let original = family.woven_bounds_exhaustive()?;
    let intersected = intersect_family(family, k)?;
    let bk = k.basis();
    let pk = k.projector();
    let commuting = family.fusion_systems()?.iter().all(|sys| {
        sys.members().iter().all(|m| {
            let p = m.subspace.projector();
            p.matmul(&pk).max_abs_diff(&pk.matmul(&p)) <= COMMUTE_TOL
        })
    });

    let full = intersected.contributions();
    let table: Vec<Vec<Matrix>> = (0..full.m())
        .map(|j| {
            (0..full.n())
                .map(|i| bk.transpose().matmul(full.entry(j, i)).matmul(bk))
                .collect()
        })
        .collect();
    let on_k = Contributions::new(k.rank(), table)?;
    let restricted = on_k.exhaustive(DEFAULT_MAX_PARTITIONS)?;

    let slack = CONTAINMENT_SLACK * original.universal_upper.max(1.0);
    let mut mismatches = 0;
    for s in 0..INTERSECTION_SAMPLES as u64 {
        let mut rng = crate::sampling::rng_for(seed, s);
        let u = unit_vector(&mut rng, k.rank());
        let p = on_k.sampled_partition(seed, s);
        let value = on_k.operator(&p)?.quadratic_form(&u);
        if value < original.universal_lower - slack || value > original.universal_upper + slack {
            mismatches += 1;
        }
    }
    let holds = within_interval(
        restricted.universal_lower,
        restricted.universal_upper,
        original.universal_lower,
        original.universal_upper,
    );
    let report = IntersectionReport {
        k_rank: k.rank(),
        original_lower: original.universal_lower,
        original_upper: original.universal_upper,
        restricted_lower: restricted.universal_lower,
        restricted_upper: restricted.universal_upper,
        restricted_woven: restricted.is_woven,
        commuting,
        holds,
        samples: INTERSECTION_SAMPLES,
        seed,
        mismatches,
    };
    Ok((intersected, report))
}

/// A frame sequence `{f_ij}_j` spanning the member subspace `W_i`, with weight `ν_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalFrame {
    pub vectors: Vec<Vec<f64>>,
    pub weight: f64,
    /// Optimal frame bounds of the local frame for its own span; zero when empty.
    pub lower: f64,
    pub upper: f64,
    pub span: Subspace,
}

impl LocalFrame {
    fn new(dim: usize, vectors: Vec<Vec<f64>>, weight: f64, index: usize) -> Result<Self> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(FrameError::InvalidWeight {
                index,
                value: weight,
            });
        }
        let span = Subspace::from_spanning(dim, &vectors)?;
        let r = span.rank();
        let (lower, upper) = if r == 0 {
            (0.0, 0.0)
        } else {
            let mut s = Matrix::zeros(dim, dim);
            for v in &vectors {
                s.add_outer(1.0, v, v);
            }
            let eig = sym_eig(&s)?;
            (eig.eigenvalues[dim - r].max(0.0), eig.max())
        };
        Ok(Self {
            vectors,
            weight,
            lower,
            upper,
            span,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.span.rank() == 0
    }

    /// `ν² Σ_j f_j f_jᵀ`.
    pub fn weighted_operator(&self, dim: usize) -> Matrix {
        let mut s = Matrix::zeros(dim, dim);
        for v in &self.vectors {
            s.add_outer(self.weight * self.weight, v, v);
        }
        s
    }
}

/// Local frames `{f_ij}` for every index `i`, each spanning its own subspace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalSystem {
    dim: usize,
    locals: Vec<LocalFrame>,
}

/// A flattened local system with the position of every `(i, j)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatFrame {
    pub frame: DiscreteFrame,
    /// `index_map[k] = (i, j)`: flat vector `k` is `ν_i f_ij` (0-based).
    pub index_map: Vec<(usize, usize)>,
}

impl LocalSystem {
    /// Builds from `(vectors, weight)` pairs; an empty vector list means the zero contribution.
    pub fn new(dim: usize, locals: Vec<(Vec<Vec<f64>>, f64)>) -> Result<Self> {
        if dim == 0 || locals.is_empty() {
            return Err(FrameError::EmptyInput);
        }
        let locals = locals
            .into_iter()
            .enumerate()
            .map(|(i, (v, w))| LocalFrame::new(dim, v, w, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim, locals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.locals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locals.is_empty()
    }

    pub fn locals(&self) -> &[LocalFrame] {
        &self.locals
    }

    /// `inf_i 𝒜_{f_i}` over nonempty local frames.
    pub fn inf_lower(&self) -> f64 {
        self.locals
            .iter()
            .filter(|l| !l.is_empty())
            .map(|l| l.lower)
            .fold(f64::INFINITY, f64::min)
    }

    /// `sup_i ℬ_{f_i}` over nonempty local frames.
    pub fn sup_upper(&self) -> f64 {
        self.locals
            .iter()
            .filter(|l| !l.is_empty())
            .map(|l| l.upper)
            .fold(0.0, f64::max)
    }

    /// `({W_i}, {ν_i})` with `W_i` the span of the local frame.
    pub fn fusion_frame(&self) -> Result<FusionFrame> {
        FusionFrame::from_parts(
            self.dim,
            self.locals.iter().map(|l| l.span.clone()).collect(),
            self.locals.iter().map(|l| l.weight).collect(),
        )
    }

    /// Each local frame replaced by an orthonormal basis of its span.
    pub fn orthonormalized(&self) -> Result<LocalSystem> {
        LocalSystem::new(
            self.dim,
            self.locals
                .iter()
                .map(|l| (l.span.basis_vectors(), l.weight))
                .collect(),
        )
    }

    /// The single frame `{ν_i f_ij}` over all pairs.
    pub fn flatten(&self) -> Result<FlatFrame> {
        let mut vectors = Vec::new();
        let mut index_map = Vec::new();
        for (i, l) in self.locals.iter().enumerate() {
            for (j, v) in l.vectors.iter().enumerate() {
                vectors.push(v.iter().map(|x| l.weight * x).collect());
                index_map.push((i, j));
            }
        }
        Ok(FlatFrame {
            frame: DiscreteFrame::new(self.dim, vectors)?,
            index_map,
        })
    }

    fn block_contributions(&self) -> Vec<Matrix> {
        self.locals
            .iter()
            .map(|l| l.weighted_operator(self.dim))
            .collect()
    }
}

pub fn flatten_local_system(l: &LocalSystem) -> Result<FlatFrame> {
    l.flatten()
}

/// Universal bounds along one of the three equivalent descriptions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteVerdict {
    pub lower: f64,
    pub upper: f64,
    pub woven: bool,
}

impl From<&WovenReport> for RouteVerdict {
    fn from(r: &WovenReport) -> Self {
        Self {
            lower: r.universal_lower,
            upper: r.universal_upper,
            woven: r.is_woven,
        }
    }
}

/// Woven verdicts of two local systems seen as vector families, as fusion
/// families, and as orthonormalized vector families.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub vectors: RouteVerdict,
    pub fusion: RouteVerdict,
    pub orthonormal: RouteVerdict,
    pub agree: bool,
    /// `min(inf 𝒜_f, inf 𝒜_g)`.
    pub lower_constant: f64,
    /// `max(sup ℬ_f, sup ℬ_g)`.
    pub upper_constant: f64,
    pub chain_holds: bool,
    pub partitions_examined: u64,
}

fn block_report(a: &LocalSystem, b: &LocalSystem) -> Result<WovenReport> {
    Contributions::new(
        a.dim,
        vec![a.block_contributions(), b.block_contributions()],
    )?
    .exhaustive(DEFAULT_MAX_PARTITIONS)
}

/// Compares the three woven verdicts and checks
/// `L_vec ≥ 𝒜·L_fus` and `L_fus ≥ L_vec/ℬ` on the universal lower bounds.
pub fn t1_equivalence_report(lf: &LocalSystem, lg: &LocalSystem) -> Result<EquivalenceReport> {
    if lf.len() != lg.len() {
        return Err(FrameError::IndexMismatch {
            left: lf.len(),
            right: lg.len(),
        });
    }
    if lf.dim != lg.dim {
        return Err(FrameError::DimensionMismatch {
            expected: lf.dim,
            found: lg.dim,
        });
    }
    let vec_report = block_report(lf, lg)?;
    let fusion_family = WovenFamily::new_fusion(vec![lf.fusion_frame()?, lg.fusion_frame()?])?;
    let fus_report = fusion_family.woven_bounds_exhaustive()?;
    let on_report = block_report(&lf.orthonormalized()?, &lg.orthonormalized()?)?;

    let lower_constant = lf.inf_lower().min(lg.inf_lower());
    let upper_constant = lf.sup_upper().max(lg.sup_upper());
    let (l_vec, l_fus) = (vec_report.universal_lower, fus_report.universal_lower);
    let tol = CONTAINMENT_SLACK;
    let chain_holds = lower_constant.is_finite()
        && upper_constant > 0.0
        && l_vec >= lower_constant * l_fus - tol
        && l_fus >= l_vec / upper_constant - tol
        && vec_report.universal_upper <= upper_constant * fus_report.universal_upper + tol;

    let vectors = RouteVerdict::from(&vec_report);
    let fusion = RouteVerdict::from(&fus_report);
    let orthonormal = RouteVerdict::from(&on_report);
    Ok(EquivalenceReport {
        agree: vectors.woven == fusion.woven && fusion.woven == orthonormal.woven,
        vectors,
        fusion,
        orthonormal,
        lower_constant,
        upper_constant,
        chain_holds,
        partitions_examined: fus_report.partitions_examined,
    })
}

/// Effect of deleting the indices `J` from a woven pair of fusion frames.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalReport {
    pub removed: Vec<usize>,
    /// `𝒟 = λ_max(Σ_{i∈J} ν_i² P_{W_i})`.
    pub removed_bound: f64,
    pub full_lower: f64,
    pub full_upper: f64,
    pub predicted_lower: f64,
    pub restricted_lower: f64,
    pub restricted_upper: f64,
    pub contained: bool,
    pub members_are_fusion_frames: bool,
}

/// Removes the 0-based indices `j_set` and checks the remaining family
/// against `[𝒜 − 𝒟, ℬ]`.
pub fn remove_subset_check(family: &WovenFamily, j_set: &[usize]) -> Result<RemovalReport> {
    let systems = family.fusion_systems()?;
    if systems.len() != 2 {
        return Err(FrameError::RequiresTwoSystems {
            found: systems.len(),
        });
    }
    let n = family.n();
    let mut removed = j_set.to_vec();
    removed.sort_unstable();
    removed.dedup();
    if removed.iter().any(|&i| i >= n) {
        return Err(FrameError::InvalidInput(format!(
            "removed index out of range 1..={n}"
        )));
    }
    if removed.len() >= n {
        return Err(FrameError::InvalidInput("cannot remove every index".into()));
    }

    let mut dsum = Matrix::zeros(family.dim(), family.dim());
    for &i in &removed {
        dsum.add_assign(&systems[0].member_operator(i));
    }
    let removed_bound = if removed.is_empty() {
        0.0
    } else {
        sym_eig(&dsum)?.max().max(0.0)
    };
    let full = family.woven_bounds_exhaustive()?;
    if removed_bound >= full.universal_lower {
        return Err(FrameError::HypothesisNotMet {
            removed: removed_bound,
            lower: full.universal_lower,
        });
    }
    let keep: Vec<usize> = (0..n)
        .filter(|i| removed.binary_search(i).is_err())
        .collect();
    let restricted_family = family.restrict(&keep)?;
    let restricted = restricted_family.woven_bounds_exhaustive()?;
    let predicted_lower = full.universal_lower - removed_bound;
    let members_are_fusion_frames = restricted_family
        .member_bounds()?
        .iter()
        .all(|b| bounds_define_frame(b.lower, b.upper));
    Ok(RemovalReport {
        removed: removed.iter().map(|i| i + 1).collect(),
        removed_bound,
        full_lower: full.universal_lower,
        full_upper: full.universal_upper,
        predicted_lower,
        restricted_lower: restricted.universal_lower,
        restricted_upper: restricted.universal_upper,
        contained: within_interval(
            restricted.universal_lower,
            restricted.universal_upper,
            predicted_lower,
            full.universal_upper,
        ),
        members_are_fusion_frames,
    })
}
