//! JSON exchange format for families, canonical serialization and digests.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{FrameError, Result};
use crate::frames::DiscreteFrame;
use crate::fusion::{FusionFrame, Subspace};
use crate::linalg::{orthonormality_defect, Matrix};
use crate::weaving::{FamilyKind, WovenFamily};

const EXACT_BASIS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDocument {
    /// Vectors spanning the subspace; empty for the zero subspace.
    pub spanning: Vec<Vec<f64>>,
}

/// One system: `vectors` for a discrete family, `weights` and `subspaces` for a fusion family.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspaces: Option<Vec<SubspaceDocument>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub dim: usize,
    pub kind: FamilyKind,
    pub systems: Vec<SystemDocument>,
}

fn invalid(msg: String) -> FrameError {
    FrameError::InvalidInput(msg)
}

fn subspace_from_doc(dim: usize, spanning: &[Vec<f64>]) -> Result<Subspace> {
    if spanning.is_empty() || spanning.iter().any(|v| v.len() != dim) {
        return Subspace::from_spanning(dim, spanning);
    }
    let candidate = Matrix::from_columns(dim, spanning)?;
    if candidate.is_finite()
        && spanning.len() <= dim
        && orthonormality_defect(&candidate) <= EXACT_BASIS_TOL
    {
        Subspace::from_orthonormal_basis(candidate)
    } else {
        Subspace::from_spanning(dim, spanning)
    }
}

impl FamilyDocument {
    /// Parses and validates a document; messages carry the line and column or the offending system.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: FamilyDocument =
            serde_json::from_str(text).map_err(|e| invalid(format!("malformed document: {e}")))?;
        doc.to_family().map_err(|e| match e {
            FrameError::InvalidInput(_) => e,
            other => invalid(other.to_string()),
        })?;
        Ok(doc)
    }

    pub fn from_family(family: &WovenFamily) -> Self {
        let systems = match family {
            WovenFamily::Discrete(s) => s
                .iter()
                .map(|f| SystemDocument {
                    vectors: Some(f.vectors().to_vec()),
                    ..Default::default()
                })
                .collect(),
            WovenFamily::Fusion(s) => s
                .iter()
                .map(|f| SystemDocument {
                    weights: Some(f.weights()),
                    subspaces: Some(
                        f.members()
                            .iter()
                            .map(|m| SubspaceDocument {
                                spanning: m.subspace.basis_vectors(),
                            })
                            .collect(),
                    ),
                    ..Default::default()
                })
                .collect(),
        };
        Self {
            dim: family.dim(),
            kind: family.kind(),
            systems,
        }
    }

    pub fn to_family(&self) -> Result<WovenFamily> {
        if self.dim == 0 {
            return Err(invalid("dim must be positive".into()));
        }
        if self.systems.is_empty() {
            return Err(invalid("systems must be nonempty".into()));
        }
        let ctx = |j: usize, e: FrameError| invalid(format!("systems[{j}]: {e}"));
        match self.kind {
            FamilyKind::Discrete => {
                let frames = self
                    .systems
                    .iter()
                    .enumerate()
                    .map(|(j, s)| match (&s.vectors, &s.weights, &s.subspaces) {
                        (Some(v), None, None) => {
                            DiscreteFrame::new(self.dim, v.clone()).map_err(|e| ctx(j, e))
                        }
                        _ => Err(invalid(format!(
                            "systems[{j}]: a discrete system has exactly the field `vectors`"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                WovenFamily::new_discrete(frames)
            }
            FamilyKind::Fusion => {
                let frames = self
                    .systems
                    .iter()
                    .enumerate()
                    .map(|(j, s)| match (&s.vectors, &s.weights, &s.subspaces) {
                        (None, Some(w), Some(subs)) => {
                            if w.len() != subs.len() {
                                return Err(invalid(format!(
                                    "systems[{j}]: {} weights for {} subspaces",
                                    w.len(),
                                    subs.len()
                                )));
                            }
                            let subspaces = subs
                                .iter()
                                .map(|s| subspace_from_doc(self.dim, &s.spanning))
                                .collect::<Result<Vec<_>>>()
                                .map_err(|e| ctx(j, e))?;
                            FusionFrame::from_parts(self.dim, subspaces, w.clone()).map_err(|e| ctx(j, e))
                        }
                        _ => Err(invalid(format!(
                            "systems[{j}]: a fusion system has exactly the fields `weights` and `subspaces`"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                WovenFamily::new_fusion(frames)
            }
        }
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        canonical_json(self)
    }
}

/// Compact JSON with object keys sorted and floats in shortest round-trip form.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v =
        serde_json::to_value(value).map_err(|e| invalid(format!("serialization failed: {e}")))?;
    serde_json::to_string(&v).map_err(|e| invalid(format!("serialization failed: {e}")))
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
