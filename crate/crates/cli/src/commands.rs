use std::io::Read;
use std::path::Path;

use serde::Serialize;
use woven_core::document::{canonical_json, digest, FamilyDocument};
use woven_core::instances::{self, InstanceId, MissingIndex, SecondOrdering};
use woven_core::perturbation::{
    op_perturbation_check, proj_perturbation_check, pw_check, NormForm, PerturbationCertificate,
};
use woven_core::weaving::{partition_count, NonwovenWitness, DEFAULT_MAX_PARTITIONS};
use woven_core::{FrameError, WovenFamily, WovenReport};

use crate::{
    Command, MissingIndexArg, OrderingArg, PerturbArgs, PerturbMethod, ReproduceArgs, WovenArgs,
};

pub const MAX_PARTITIONS_ENV: &str = "WOVEN_MAX_PARTITIONS";

pub struct Outcome {
    pub line: String,
    pub holds: bool,
}

#[derive(Serialize)]
struct ReportDocument<T: Serialize> {
    command: &'static str,
    input_digest: String,
    result: T,
    notes: Vec<String>,
    seed: Option<u64>,
}

type CliResult<T> = std::result::Result<T, String>;

fn fail(e: FrameError) -> String {
    e.to_string()
}

fn emit<T: Serialize>(
    command: &'static str,
    input_digest: String,
    result: T,
    notes: Vec<String>,
    seed: Option<u64>,
    holds: bool,
) -> CliResult<Outcome> {
    let doc = ReportDocument {
        command,
        input_digest,
        result,
        notes,
        seed,
    };
    Ok(Outcome {
        line: canonical_json(&doc).map_err(fail)?,
        holds,
    })
}

pub fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Analyze { input } => analyze(&input),
        Command::Woven(args) => woven(&args),
        Command::Perturb(args) => perturb(&args),
        Command::Reproduce(args) => reproduce(&args),
    }
}

fn partition_cap() -> CliResult<u64> {
    match std::env::var(MAX_PARTITIONS_ENV) {
        Err(_) => Ok(DEFAULT_MAX_PARTITIONS),
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| format!("{MAX_PARTITIONS_ENV} must be a positive integer, got `{raw}`")),
    }
}

struct Loaded {
    family: WovenFamily,
    digest: String,
}

fn load(path: &Path) -> CliResult<Loaded> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
    };
    let doc = FamilyDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let family = doc.to_family().map_err(fail)?;
    let canonical = doc.to_canonical_json().map_err(fail)?;
    Ok(Loaded {
        family,
        digest: digest(canonical.as_bytes()),
    })
}

#[derive(Serialize)]
struct SystemSummary {
    index: usize,
    len: usize,
    lower: f64,
    upper: f64,
    is_frame: bool,
    is_tight: bool,
    is_parseval: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_riesz_basis: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    synthesis_is_onto: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_riesz_decomposition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_orthonormal_fusion_basis: Option<bool>,
}

#[derive(Serialize)]
struct AnalyzeResult {
    kind: &'static str,
    dim: usize,
    m: usize,
    n: usize,
    systems: Vec<SystemSummary>,
}

const FLAG_TOL: f64 = 1e-9;

fn analyze(input: &Path) -> CliResult<Outcome> {
    let loaded = load(input)?;
    let family = &loaded.family;
    let mut systems = Vec::new();
    match family {
        WovenFamily::Discrete(frames) => {
            for (index, f) in frames.iter().enumerate() {
                let b = f.optimal_bounds().map_err(fail)?;
                systems.push(SystemSummary {
                    index: index + 1,
                    len: f.len(),
                    lower: b.lower,
                    upper: b.upper,
                    is_frame: b.is_frame,
                    is_tight: b.is_frame && b.is_tight(FLAG_TOL),
                    is_parseval: b.is_parseval(FLAG_TOL),
                    is_riesz_basis: Some(f.is_riesz_basis().map_err(fail)?),
                    synthesis_is_onto: None,
                    is_riesz_decomposition: None,
                    is_orthonormal_fusion_basis: None,
                });
            }
        }
        WovenFamily::Fusion(frames) => {
            for (index, f) in frames.iter().enumerate() {
                let b = f.fusion_bounds().map_err(fail)?;
                systems.push(SystemSummary {
                    index: index + 1,
                    len: f.len(),
                    lower: b.lower,
                    upper: b.upper,
                    is_frame: b.is_frame,
                    is_tight: b.is_frame && b.is_tight(FLAG_TOL),
                    is_parseval: b.is_parseval(FLAG_TOL),
                    is_riesz_basis: None,
                    synthesis_is_onto: Some(f.synthesis_is_onto().map_err(fail)?),
                    is_riesz_decomposition: Some(f.is_riesz_decomposition().map_err(fail)?),
                    is_orthonormal_fusion_basis: Some(
                        f.is_orthonormal_fusion_basis().map_err(fail)?,
                    ),
                });
            }
        }
    }
    let result = AnalyzeResult {
        kind: family.kind().as_str(),
        dim: family.dim(),
        m: family.m(),
        n: family.n(),
        systems,
    };
    emit("analyze", loaded.digest, result, Vec::new(), None, true)
}

#[derive(Serialize)]
struct WovenResult {
    report: WovenReport,
    witness: Option<NonwovenWitness>,
}

fn woven(args: &WovenArgs) -> CliResult<Outcome> {
    let loaded = load(&args.input)?;
    let family = &loaded.family;
    let cap = partition_cap()?;
    let (report, witness) = match args.samples {
        Some(samples) => {
            let report = family
                .woven_bounds_sampled(samples, args.seed)
                .map_err(fail)?;
            let witness = (!report.is_woven).then(|| NonwovenWitness {
                partition: report.worst_partition.clone(),
                vector: report.lower_witness.clone(),
                value: report.universal_lower,
            });
            (report, witness)
        }
        None => {
            let report = family
                .woven_bounds_exhaustive_capped(cap)
                .map_err(|e| match e {
                    FrameError::TooManyPartitions { .. } => {
                        format!("{e}; use --samples N --seed S")
                    }
                    other => other.to_string(),
                })?;
            let witness = if report.is_woven {
                None
            } else {
                Some(
                    family
                        .find_nonwoven_witness_capped(args.eps, cap)
                        .map_err(fail)?
                        .unwrap_or_else(|| NonwovenWitness {
                            partition: report.worst_partition.clone(),
                            vector: report.lower_witness.clone(),
                            value: report.universal_lower,
                        }),
                )
            };
            (report, witness)
        }
    };
    let notes = report.notes.clone();
    let seed = report.seed;
    let holds = report.is_woven;
    emit(
        "woven",
        loaded.digest,
        WovenResult { report, witness },
        notes,
        seed,
        holds,
    )
}

fn required(value: Option<f64>, flag: &str, method: &str) -> CliResult<f64> {
    value.ok_or_else(|| format!("--method {method} requires --{flag}"))
}

fn perturb(args: &PerturbArgs) -> CliResult<Outcome> {
    let loaded = load(&args.input)?;
    let systems = loaded
        .family
        .fusion_systems()
        .map_err(|_| "perturb needs a fusion document".to_string())?;
    if systems.len() != 2 {
        return Err(fail(FrameError::InvalidInput(format!(
            "perturb compares exactly two systems, found {}",
            systems.len()
        ))));
    }
    let (w, v) = (&systems[0], &systems[1]);
    let cert: PerturbationCertificate = match args.method {
        PerturbMethod::Pw => pw_check(
            w,
            v,
            required(args.lambda1, "lambda1", "pw")?,
            required(args.lambda2, "lambda2", "pw")?,
            required(args.mu, "mu", "pw")?,
            args.samples,
            args.seed,
        ),
        PerturbMethod::Op => op_perturbation_check(
            w,
            v,
            required(args.lambda, "lambda", "op")?,
            required(args.mu, "mu", "op")?,
            required(args.gamma, "gamma", "op")?,
            args.samples,
            args.seed,
        ),
        PerturbMethod::Proj => proj_perturbation_check(
            w,
            v,
            required(args.k, "K", "proj")?,
            if args.squared {
                NormForm::Squared
            } else {
                NormForm::Unsquared
            },
            args.samples,
            args.seed,
        ),
    }
    .map_err(fail)?;
    let mut notes = cert.notes.clone();
    match (cert.hypothesis_holds, cert.lower_contained, cert.upper_contained) {
        (true, Some(true), Some(true)) => notes.push("predicted interval contains the exhaustive universal interval".into()),
        (true, Some(lo), Some(hi)) => notes.push(format!(
            "prediction not contained in the exhaustive interval (lower contained: {lo}, upper contained: {hi})"
        )),
        _ => {}
    }
    let holds = cert.hypothesis_holds;
    emit(
        "perturb",
        loaded.digest,
        cert,
        notes,
        Some(args.seed),
        holds,
    )
}

fn reproduce(args: &ReproduceArgs) -> CliResult<Outcome> {
    let id: InstanceId = args.id.parse().map_err(fail)?;
    let inst = match id {
        InstanceId::Ex4_2 => instances::build_ex4_2_with(
            args.dim,
            match args.missing_index {
                MissingIndexArg::Zero => MissingIndex::ZeroContribution,
                MissingIndexArg::Omitted => MissingIndex::Omitted,
            },
        ),
        InstanceId::Ex5_4 => instances::build_ex5_4_with(
            args.dim,
            args.delta,
            match args.ordering {
                OrderingArg::Aligned => SecondOrdering::Aligned,
                OrderingArg::Swapped => SecondOrdering::Swapped,
            },
        ),
        other => instances::build(other, args.dim, args.delta),
    }
    .map_err(fail)?;
    if let Some(count) = partition_count(inst.family.m(), inst.family.n()) {
        let cap = partition_cap()?;
        if count > cap {
            return Err(format!("{count} partitions exceed the cap of {cap}"));
        }
    }
    let canonical = FamilyDocument::from_family(&inst.family)
        .to_canonical_json()
        .map_err(fail)?;
    let report = instances::reproduce(&inst).map_err(fail)?;
    let mut notes = report.notes.clone();
    notes.extend(report.checks.iter().filter_map(|c| c.note.clone()));
    let holds = report.published_pass;
    emit(
        "reproduce",
        digest(canonical.as_bytes()),
        report,
        notes,
        None,
        holds,
    )
}
