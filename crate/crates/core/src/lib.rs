//! Numerical toolkit for frames, fusion frames and woven families in `R^d`.
//!
//! The crate computes optimal and universal frame bounds, enumerates or samples
//! weavings, searches for degenerate weavings, and checks structural and
//! perturbation results on concrete finite instances. Everything is real,
//! dense and deterministic for a fixed seed.

pub mod document;
pub mod error;
pub mod frames;
pub mod fusion;
pub mod instances;
pub mod linalg;
pub mod perturbation;
pub mod sampling;
pub mod transforms;
pub mod weaving;

pub use error::{FrameError, Result};
pub use frames::{BoundsReport, DiscreteFrame, FRAME_TOL};
pub use fusion::{FusionFrame, FusionMember, Subspace};
pub use linalg::{Matrix, Spectrum};
pub use weaving::{Partition, WovenFamily, WovenReport};
