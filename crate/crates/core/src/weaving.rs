//! Weavings of several frames or fusion frames over a shared index set.
//!
//! A partition assigns every index `i` to one of the `m` systems. Partitions
//! are enumerated lexicographically as base-`m` digit strings with index 0 as
//! the most significant digit, so the first partition is "everything from
//! system 1" and the last is "everything from system `m`".
//!
//! All weaving computations go through [`Contributions`]: a table of positive
//! semidefinite `d x d` matrices `C[j][i]`, one per system `j` and index `i`,
//! whose partition-wise sums are the weaving operators.

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{FrameError, Result};
use crate::frames::{bounds_define_frame, BoundsReport, DiscreteFrame};
use crate::fusion::FusionFrame;
use crate::linalg::{sym_eig, Matrix};
use crate::sampling::rng_for;

/// Default ceiling on `m^n` for exhaustive enumeration.
pub const DEFAULT_MAX_PARTITIONS: u64 = 1 << 22;

/// Default threshold below which a weaving counts as degenerate.
pub const DEFAULT_WITNESS_EPS: f64 = 1e-8;

pub const UNIVERSAL_UPPER_NOTE: &str =
    "universal upper bound is the maximum of the weaving upper bounds; a minimum over weavings would not dominate every weaving";

pub const SAMPLED_LOWER_NOTE: &str =
    "sampled universal lower bound is an upper estimate of the true universal lower bound";

/// Number of partitions `m^n`, if it fits in a `u64`.
pub fn partition_count(m: usize, n: usize) -> Option<u64> {
    let n = u32::try_from(n).ok()?;
    (m as u64).checked_pow(n)
}

fn enumeration_size(m: usize, n: usize, cap: u64) -> Result<u64> {
    match partition_count(m, n) {
        Some(c) if c <= cap => Ok(c),
        Some(c) => Err(FrameError::TooManyPartitions {
            count: c.to_string(),
            cap,
        }),
        None => Err(FrameError::TooManyPartitions {
            count: format!("{m}^{n}"),
            cap,
        }),
    }
}

/// Assignment of each index to the system that supplies it.
///
/// Stored 0-based; serialized 1-based under the key `assignment`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
}

impl Partition {
    pub fn from_zero_based(assignment: Vec<usize>, m: usize) -> Result<Self> {
        for (index, &entry) in assignment.iter().enumerate() {
            if entry >= m {
                return Err(FrameError::InvalidPartition {
                    index: index + 1,
                    entry: entry + 1,
                    m,
                });
            }
        }
        Ok(Self { assignment })
    }

    pub fn from_one_based(assignment: &[usize], m: usize) -> Result<Self> {
        let mut zero = Vec::with_capacity(assignment.len());
        for (index, &entry) in assignment.iter().enumerate() {
            if entry == 0 || entry > m {
                return Err(FrameError::InvalidPartition {
                    index: index + 1,
                    entry,
                    m,
                });
            }
            zero.push(entry - 1);
        }
        Ok(Self { assignment: zero })
    }

    /// Every index taken from system `j` (0-based).
    pub fn uniform(n: usize, j: usize) -> Self {
        Self {
            assignment: vec![j; n],
        }
    }

    /// The partition with lexicographic rank `code`.
    pub fn from_code(code: u64, m: usize, n: usize) -> Self {
        let mut assignment = vec![0; n];
        let mut rest = code;
        for slot in assignment.iter_mut().rev() {
            *slot = (rest % m as u64) as usize;
            rest /= m as u64;
        }
        Self { assignment }
    }

    /// Lexicographic rank; `None` if it overflows.
    pub fn code(&self, m: usize) -> Option<u64> {
        self.assignment.iter().try_fold(0u64, |acc, &d| {
            acc.checked_mul(m as u64)?.checked_add(d as u64)
        })
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.assignment.iter().map(|j| j + 1).collect()
    }

    pub fn owner(&self, i: usize) -> usize {
        self.assignment[i]
    }

    /// Preimages `σ_j` as 0-based index lists.
    pub fn blocks(&self, m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); m];
        for (i, &j) in self.assignment.iter().enumerate() {
            out[j].push(i);
        }
        out
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            assignment: Vec<usize>,
        }
        Repr {
            assignment: self.one_based(),
        }
        .serialize(s)
    }
}

/// Per-system, per-index PSD contributions whose partition sums are weaving operators.
#[derive(Debug, Clone)]
pub struct Contributions {
    dim: usize,
    table: Vec<Vec<Matrix>>,
}

#[derive(Debug, Clone)]
struct Extreme {
    value: f64,
    key: u64,
    partition: Partition,
    vector: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Scan {
    low: Extreme,
    high: Extreme,
}

impl Scan {
    fn merge(a: Scan, b: Scan) -> Scan {
        let low = if (b.low.value, b.low.key) < (a.low.value, a.low.key) {
            b.low
        } else {
            a.low
        };
        let high = if b.high.value > a.high.value
            || (b.high.value == a.high.value && b.high.key < a.high.key)
        {
            b.high
        } else {
            a.high
        };
        Scan { low, high }
    }
}

/// Which enumeration produced a [`WovenReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Sampled,
}

/// Universal bounds over the examined weavings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WovenReport {
    pub universal_lower: f64,
    pub universal_upper: f64,
    pub is_woven: bool,
    pub worst_partition: Partition,
    pub best_upper_partition: Partition,
    pub lower_witness: Vec<f64>,
    pub method: Method,
    pub partitions_examined: u64,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

/// A weaving whose lower bound falls below a threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonwovenWitness {
    pub partition: Partition,
    pub vector: Vec<f64>,
    pub value: f64,
}

impl Contributions {
    pub fn new(dim: usize, table: Vec<Vec<Matrix>>) -> Result<Self> {
        let n = table.first().map(Vec::len).ok_or(FrameError::EmptyInput)?;
        if n == 0 || dim == 0 {
            return Err(FrameError::EmptyInput);
        }
        for row in &table {
            if row.len() != n {
                return Err(FrameError::IndexMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for c in row {
                if c.rows() != dim || c.cols() != dim {
                    return Err(FrameError::DimensionMismatch {
                        expected: dim,
                        found: c.rows(),
                    });
                }
            }
        }
        Ok(Self { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> usize {
        self.table.len()
    }

    pub fn n(&self) -> usize {
        self.table[0].len()
    }

    pub fn entry(&self, j: usize, i: usize) -> &Matrix {
        &self.table[j][i]
    }

    pub fn check_partition(&self, p: &Partition) -> Result<()> {
        if p.len() != self.n() {
            return Err(FrameError::PartitionLengthMismatch {
                expected: self.n(),
                found: p.len(),
            });
        }
        if let Some((index, &entry)) = p
            .assignment
            .iter()
            .enumerate()
            .find(|(_, &j)| j >= self.m())
        {
            return Err(FrameError::InvalidPartition {
                index: index + 1,
                entry: entry + 1,
                m: self.m(),
            });
        }
        Ok(())
    }

    /// `Σ_i C[p(i)][i]`.
    pub fn operator(&self, p: &Partition) -> Result<Matrix> {
        self.check_partition(p)?;
        let mut s = Matrix::zeros(self.dim, self.dim);
        for (i, &j) in p.assignment.iter().enumerate() {
            s.add_assign(&self.table[j][i]);
        }
        Ok(s)
    }

    /// `Σ_i C[j][i]`, the operator of system `j` alone.
    pub fn system_operator(&self, j: usize) -> Matrix {
        let mut s = Matrix::zeros(self.dim, self.dim);
        for c in &self.table[j] {
            s.add_assign(c);
        }
        s
    }

    pub fn bounds(&self, p: &Partition) -> Result<BoundsReport> {
        BoundsReport::from_operator(&self.operator(p)?)
    }

    fn evaluate(&self, key: u64, p: Partition) -> Result<Scan> {
        let eig = sym_eig(&self.operator(&p)?)?;
        let low = Extreme {
            value: eig.min().max(0.0),
            key,
            partition: p.clone(),
            vector: eig.min_vector(),
        };
        let high = Extreme {
            value: eig.max().max(0.0),
            key,
            partition: p,
            vector: eig.max_vector(),
        };
        Ok(Scan { low, high })
    }

    fn scan<F>(&self, count: u64, partition_of: F) -> Result<Scan>
    where
        F: Fn(u64) -> Partition + Sync,
    {
        (0..count)
            .into_par_iter()
            .map(|k| self.evaluate(k, partition_of(k)))
            .try_reduce_with(|a, b| Ok(Scan::merge(a, b)))
            .unwrap_or(Err(FrameError::EmptyInput))
    }

    fn report(&self, scan: Scan, method: Method, examined: u64, seed: Option<u64>) -> WovenReport {
        let mut notes = vec![UNIVERSAL_UPPER_NOTE.to_string()];
        if method == Method::Sampled {
            notes.push(SAMPLED_LOWER_NOTE.to_string());
        }
        WovenReport {
            universal_lower: scan.low.value,
            universal_upper: scan.high.value,
            is_woven: bounds_define_frame(scan.low.value, scan.high.value),
            worst_partition: scan.low.partition,
            best_upper_partition: scan.high.partition,
            lower_witness: scan.low.vector,
            method,
            partitions_examined: examined,
            seed,
            notes,
        }
    }

    /// Universal bounds over all `m^n` partitions, refusing above `cap`.
    pub fn exhaustive(&self, cap: u64) -> Result<WovenReport> {
        let (m, n) = (self.m(), self.n());
        let count = enumeration_size(m, n, cap)?;
        let scan = self.scan(count, |code| Partition::from_code(code, m, n))?;
        Ok(self.report(scan, Method::Exhaustive, count, None))
    }

    /// The `k`-th partition of the sampled sequence: the `m` uniform
    /// partitions first, then uniformly random ones.
    pub fn sampled_partition(&self, seed: u64, k: u64) -> Partition {
        let (m, n) = (self.m(), self.n());
        if k < m as u64 {
            return Partition::uniform(n, k as usize);
        }
        let mut rng = rng_for(seed, k);
        use rand::Rng;
        Partition {
            assignment: (0..n).map(|_| rng.random_range(0..m)).collect(),
        }
    }

    /// Bounds over the `m` uniform partitions plus `samples` random ones.
    pub fn sampled(&self, samples: u64, seed: u64) -> Result<WovenReport> {
        if samples == 0 {
            return Err(FrameError::InvalidInput(
                "sample count must be at least 1".into(),
            ));
        }
        let count = samples + self.m() as u64;
        let scan = self.scan(count, |k| self.sampled_partition(seed, k))?;
        Ok(self.report(scan, Method::Sampled, count, Some(seed)))
    }

    /// First partition in lexicographic order whose operator has `λ_min < eps`.
    pub fn first_below(&self, eps: f64, cap: u64) -> Result<Option<NonwovenWitness>> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(FrameError::InvalidInput(format!(
                "eps {eps} must be a positive number"
            )));
        }
        let (m, n) = (self.m(), self.n());
        let count = enumeration_size(m, n, cap)?;
        let found = (0..count)
            .into_par_iter()
            .filter_map(|code| {
                let p = Partition::from_code(code, m, n);
                let op = match self.operator(&p) {
                    Ok(op) => op,
                    Err(e) => return Some(Err(e)),
                };
                match sym_eig(&op) {
                    Ok(eig) if eig.min() < eps => Some(Ok(NonwovenWitness {
                        partition: p,
                        vector: eig.min_vector(),
                        value: eig.min().max(0.0),
                    })),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .find_first(|_| true);
        found.transpose()
    }
}

/// One member of a [`WovenFamily`] with a partition applied.
#[derive(Debug, Clone, PartialEq)]
pub enum Weaving {
    Discrete(DiscreteFrame),
    Fusion(FusionFrame),
}

impl Weaving {
    pub fn operator(&self) -> Matrix {
        match self {
            Weaving::Discrete(f) => f.frame_operator(),
            Weaving::Fusion(w) => w.fusion_frame_operator(),
        }
    }

    pub fn bounds(&self) -> Result<BoundsReport> {
        BoundsReport::from_operator(&self.operator())
    }

    pub fn len(&self) -> usize {
        match self {
            Weaving::Discrete(f) => f.len(),
            Weaving::Fusion(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Discrete,
    Fusion,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Discrete => "discrete",
            FamilyKind::Fusion => "fusion",
        }
    }
}

/// `m ≥ 2` systems of one kind sharing index set and ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum WovenFamily {
    Discrete(Vec<DiscreteFrame>),
    Fusion(Vec<FusionFrame>),
}

/// Outcome of checking every weaving for the unique-decomposition property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RieszWeavingReport {
    pub holds: bool,
    pub partitions_checked: u64,
    pub failing_count: u64,
    /// At most [`RieszWeavingReport::LISTED_FAILURES`] failing partitions, in enumeration order.
    pub failing: Vec<Partition>,
}

impl RieszWeavingReport {
    pub const LISTED_FAILURES: usize = 64;
}

/// Comparison of the universal upper bound with the sum of member upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperGapReport {
    pub universal_upper: f64,
    pub member_upper_sum: f64,
    pub gap: f64,
    pub strictly_below: bool,
}

/// Bounds of a restricted index set against those of the full family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetExtensionReport {
    pub subset: Vec<usize>,
    pub subset_lower: f64,
    pub subset_upper: f64,
    pub subset_woven: bool,
    pub full_lower: f64,
    pub full_upper: f64,
    pub full_woven: bool,
    pub member_upper_sum: f64,
    pub lower_preserved: bool,
    pub upper_within_member_sum: bool,
}

const PROPERTY_SLACK: f64 = 1e-9;

impl WovenFamily {
    pub fn new_discrete(systems: Vec<DiscreteFrame>) -> Result<Self> {
        let shape: Vec<(usize, usize)> = systems.iter().map(|s| (s.len(), s.dim())).collect();
        check_shapes(&shape)?;
        Ok(WovenFamily::Discrete(systems))
    }

    pub fn new_fusion(systems: Vec<FusionFrame>) -> Result<Self> {
        let shape: Vec<(usize, usize)> = systems.iter().map(|s| (s.len(), s.dim())).collect();
        check_shapes(&shape)?;
        Ok(WovenFamily::Fusion(systems))
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            WovenFamily::Discrete(_) => FamilyKind::Discrete,
            WovenFamily::Fusion(_) => FamilyKind::Fusion,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            WovenFamily::Discrete(s) => s.len(),
            WovenFamily::Fusion(s) => s.len(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            WovenFamily::Discrete(s) => s[0].len(),
            WovenFamily::Fusion(s) => s[0].len(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            WovenFamily::Discrete(s) => s[0].dim(),
            WovenFamily::Fusion(s) => s[0].dim(),
        }
    }

    pub fn fusion_systems(&self) -> Result<&[FusionFrame]> {
        match self {
            WovenFamily::Fusion(s) => Ok(s),
            WovenFamily::Discrete(_) => Err(FrameError::WrongKind { expected: "fusion" }),
        }
    }

    pub fn discrete_systems(&self) -> Result<&[DiscreteFrame]> {
        match self {
            WovenFamily::Discrete(s) => Ok(s),
            WovenFamily::Fusion(_) => Err(FrameError::WrongKind {
                expected: "discrete",
            }),
        }
    }

    pub fn contributions(&self) -> Contributions {
        let table = match self {
            WovenFamily::Discrete(systems) => systems
                .iter()
                .map(|f| {
                    f.vectors()
                        .iter()
                        .map(|v| {
                            let mut c = Matrix::zeros(f.dim(), f.dim());
                            c.add_outer(1.0, v, v);
                            c
                        })
                        .collect()
                })
                .collect(),
            WovenFamily::Fusion(systems) => systems
                .iter()
                .map(|w| (0..w.len()).map(|i| w.member_operator(i)).collect())
                .collect(),
        };
        Contributions::new(self.dim(), table).expect("family shape validated on construction")
    }

    pub fn weave(&self, p: &Partition) -> Result<Weaving> {
        self.contributions_shape_check(p)?;
        Ok(match self {
            WovenFamily::Discrete(systems) => {
                let vectors = p
                    .assignment()
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| systems[j].vector(i).to_vec())
                    .collect();
                Weaving::Discrete(DiscreteFrame::new(self.dim(), vectors)?)
            }
            WovenFamily::Fusion(systems) => {
                let members = p
                    .assignment()
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| systems[j].member(i).clone())
                    .collect();
                Weaving::Fusion(FusionFrame::new(self.dim(), members)?)
            }
        })
    }

    fn contributions_shape_check(&self, p: &Partition) -> Result<()> {
        if p.len() != self.n() {
            return Err(FrameError::PartitionLengthMismatch {
                expected: self.n(),
                found: p.len(),
            });
        }
        if let Some((index, &entry)) = p
            .assignment()
            .iter()
            .enumerate()
            .find(|(_, &j)| j >= self.m())
        {
            return Err(FrameError::InvalidPartition {
                index: index + 1,
                entry: entry + 1,
                m: self.m(),
            });
        }
        Ok(())
    }

    pub fn member_bounds(&self) -> Result<Vec<BoundsReport>> {
        match self {
            WovenFamily::Discrete(s) => s.iter().map(DiscreteFrame::optimal_bounds).collect(),
            WovenFamily::Fusion(s) => s.iter().map(FusionFrame::fusion_bounds).collect(),
        }
    }

    pub fn woven_bounds_exhaustive(&self) -> Result<WovenReport> {
        self.woven_bounds_exhaustive_capped(DEFAULT_MAX_PARTITIONS)
    }

    pub fn woven_bounds_exhaustive_capped(&self, cap: u64) -> Result<WovenReport> {
        self.contributions().exhaustive(cap)
    }

    pub fn woven_bounds_sampled(&self, samples: u64, seed: u64) -> Result<WovenReport> {
        self.contributions().sampled(samples, seed)
    }

    /// Optimal Bessel bound of one weaving.
    pub fn weaving_bessel_bound(&self, p: &Partition) -> Result<f64> {
        Ok(self.weave(p)?.bounds()?.upper)
    }

    pub fn find_nonwoven_witness(&self, eps: f64) -> Result<Option<NonwovenWitness>> {
        self.find_nonwoven_witness_capped(eps, DEFAULT_MAX_PARTITIONS)
    }

    pub fn find_nonwoven_witness_capped(
        &self,
        eps: f64,
        cap: u64,
    ) -> Result<Option<NonwovenWitness>> {
        self.contributions().first_below(eps, cap)
    }

    pub fn woven_riesz_decomposition_check(&self) -> Result<RieszWeavingReport> {
        self.woven_riesz_decomposition_check_capped(DEFAULT_MAX_PARTITIONS)
    }

    pub fn woven_riesz_decomposition_check_capped(&self, cap: u64) -> Result<RieszWeavingReport> {
        self.fusion_systems()?;
        let (m, n) = (self.m(), self.n());
        let count = enumeration_size(m, n, cap)?;
        let failing: Vec<u64> = (0..count)
            .into_par_iter()
            .filter_map(|code| {
                let p = Partition::from_code(code, m, n);
                let verdict = self.weave(&p).and_then(|w| match w {
                    Weaving::Fusion(f) => f.is_riesz_decomposition(),
                    Weaving::Discrete(_) => Err(FrameError::WrongKind { expected: "fusion" }),
                });
                match verdict {
                    Ok(true) => None,
                    Ok(false) => Some(Ok(code)),
                    Err(e) => Some(Err(e)),
                }
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(RieszWeavingReport {
            holds: failing.is_empty(),
            partitions_checked: count,
            failing_count: failing.len() as u64,
            failing: failing
                .iter()
                .take(RieszWeavingReport::LISTED_FAILURES)
                .map(|&c| Partition::from_code(c, m, n))
                .collect(),
        })
    }

    /// Exhaustive universal upper bound against `Σ_j ℬ_j`.
    pub fn upper_bound_gap(&self) -> Result<UpperGapReport> {
        let report = self.woven_bounds_exhaustive()?;
        let member_upper_sum: f64 = self.member_bounds()?.iter().map(|b| b.upper).sum();
        let gap = member_upper_sum - report.universal_upper;
        Ok(UpperGapReport {
            universal_upper: report.universal_upper,
            member_upper_sum,
            gap,
            strictly_below: gap > PROPERTY_SLACK,
        })
    }

    /// Every system restricted to the given 0-based indices.
    pub fn restrict(&self, indices: &[usize]) -> Result<WovenFamily> {
        if indices.is_empty() {
            return Err(FrameError::EmptyInput);
        }
        match self {
            WovenFamily::Discrete(s) => WovenFamily::new_discrete(
                s.iter().map(|f| f.select(indices)).collect::<Result<_>>()?,
            ),
            WovenFamily::Fusion(s) => {
                WovenFamily::new_fusion(s.iter().map(|f| f.select(indices)).collect::<Result<_>>()?)
            }
        }
    }

    /// Compares the universal bounds on a sub-index-set with those of the whole family.
    pub fn subset_extension_check(&self, subset: &[usize]) -> Result<SubsetExtensionReport> {
        let sub = self.restrict(subset)?.woven_bounds_exhaustive()?;
        let full = self.woven_bounds_exhaustive()?;
        let member_upper_sum: f64 = self.member_bounds()?.iter().map(|b| b.upper).sum();
        Ok(SubsetExtensionReport {
            subset: subset.iter().map(|i| i + 1).collect(),
            subset_lower: sub.universal_lower,
            subset_upper: sub.universal_upper,
            subset_woven: sub.is_woven,
            full_lower: full.universal_lower,
            full_upper: full.universal_upper,
            full_woven: full.is_woven,
            member_upper_sum,
            lower_preserved: full.universal_lower >= sub.universal_lower - PROPERTY_SLACK
                && (!sub.is_woven || full.is_woven),
            upper_within_member_sum: full.universal_upper <= member_upper_sum + PROPERTY_SLACK,
        })
    }
}

fn check_shapes(shape: &[(usize, usize)]) -> Result<()> {
    if shape.len() < 2 {
        return Err(FrameError::InvalidInput(format!(
            "a woven family needs at least two systems, found {}",
            shape.len()
        )));
    }
    let (n, d) = shape[0];
    for &(n2, d2) in &shape[1..] {
        if n2 != n {
            return Err(FrameError::IndexMismatch { left: n, right: n2 });
        }
        if d2 != d {
            return Err(FrameError::DimensionMismatch {
                expected: d,
                found: d2,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::Subspace;

    fn ex_family() -> WovenFamily {
        let f =
            DiscreteFrame::new(2, vec![vec![0.0, 2.0], vec![3.0, 0.0], vec![2.0, 3.0]]).unwrap();
        let g =
            DiscreteFrame::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![3.0, 1.0]]).unwrap();
        WovenFamily::new_discrete(vec![f, g]).unwrap()
    }

    #[test]
    fn partition_codes_round_trip() {
        for code in 0..27 {
            let p = Partition::from_code(code, 3, 3);
            assert_eq!(p.code(3), Some(code));
        }
        assert_eq!(Partition::from_code(4, 2, 3).assignment(), &[1, 0, 0]);
        assert_eq!(Partition::from_code(1, 2, 3).assignment(), &[0, 0, 1]);
    }

    #[test]
    fn partition_validation_and_serialization() {
        assert!(matches!(
            Partition::from_one_based(&[1, 3], 2),
            Err(FrameError::InvalidPartition {
                index: 2,
                entry: 3,
                m: 2
            })
        ));
        let p = Partition::from_one_based(&[2, 1], 2).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"assignment":[2,1]}"#
        );
        assert_eq!(p.blocks(2), vec![vec![1], vec![0]]);
    }

    #[test]
    fn weave_takes_elements_by_owner() {
        let fam = ex_family();
        let p = Partition::from_zero_based(vec![0, 0, 1], 2).unwrap();
        let Weaving::Discrete(w) = fam.weave(&p).unwrap() else {
            panic!()
        };
        assert_eq!(
            w.vectors(),
            &[vec![0.0, 2.0], vec![3.0, 0.0], vec![3.0, 1.0]]
        );
        assert!(matches!(
            fam.weave(&Partition::uniform(2, 0)),
            Err(FrameError::PartitionLengthMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn pure_weaving_is_the_member() {
        let fam = ex_family();
        let w = fam.weave(&Partition::uniform(3, 0)).unwrap();
        assert_eq!(
            w.operator().to_rows(),
            vec![vec![13.0, 6.0], vec![6.0, 13.0]]
        );
        assert!(
            (fam.weaving_bessel_bound(&Partition::uniform(3, 0)).unwrap() - 19.0).abs() < 1e-12
        );
    }

    #[test]
    fn exhaustive_and_sampled_agree_when_sampling_covers() {
        let fam = ex_family();
        let ex = fam.woven_bounds_exhaustive().unwrap();
        assert_eq!(ex.partitions_examined, 8);
        assert!(ex.is_woven);
        let sm = fam.woven_bounds_sampled(400, 11).unwrap();
        assert_eq!(sm.universal_lower, ex.universal_lower);
        assert_eq!(sm.universal_upper, ex.universal_upper);
        assert_eq!(sm, fam.woven_bounds_sampled(400, 11).unwrap());
    }

    #[test]
    fn identical_systems_reproduce_member_bounds() {
        let f = DiscreteFrame::new(2, vec![vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let fam = WovenFamily::new_discrete(vec![f.clone(), f.clone()]).unwrap();
        let b = f.optimal_bounds().unwrap();
        let r = fam.woven_bounds_exhaustive().unwrap();
        assert_eq!((r.universal_lower, r.universal_upper), (b.lower, b.upper));
        assert_eq!(r.worst_partition, Partition::uniform(2, 0));
    }

    #[test]
    fn cap_is_enforced() {
        let fam = ex_family();
        assert!(matches!(
            fam.woven_bounds_exhaustive_capped(7),
            Err(FrameError::TooManyPartitions { cap: 7, .. })
        ));
        assert!(fam.woven_bounds_exhaustive_capped(8).is_ok());
    }

    #[test]
    fn riesz_weaving_detects_repeated_line() {
        let e1 = Subspace::coordinate(2, &[0]).unwrap();
        let e2 = Subspace::coordinate(2, &[1]).unwrap();
        let w = FusionFrame::unweighted(2, vec![e1.clone(), e2.clone()]).unwrap();
        let v = FusionFrame::unweighted(2, vec![e2, e1]).unwrap();
        let fam = WovenFamily::new_fusion(vec![w, v]).unwrap();
        let r = fam.woven_riesz_decomposition_check().unwrap();
        assert!(!r.holds);
        assert_eq!(r.partitions_checked, 4);
        assert_eq!(r.failing_count, 2);
        assert_eq!(r.failing[0].one_based(), vec![1, 2]);
        assert!(matches!(
            ex_family().woven_riesz_decomposition_check(),
            Err(FrameError::WrongKind { expected: "fusion" })
        ));
    }

    #[test]
    fn family_shape_rules() {
        let f = DiscreteFrame::new(2, vec![vec![1.0, 0.0]]).unwrap();
        let g = DiscreteFrame::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            WovenFamily::new_discrete(vec![f.clone()]),
            Err(FrameError::InvalidInput(_))
        ));
        assert!(matches!(
            WovenFamily::new_discrete(vec![f, g]),
            Err(FrameError::IndexMismatch { left: 1, right: 2 })
        ));
    }
}
