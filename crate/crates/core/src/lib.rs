//! LCD subspace codes over finite fields.
//!
//! Finite-field linear algebra, subspaces and subspace codes, association
//! schemes and distance-regular graphs, Hadamard and weighing matrix
//! searches, and the matrix-algebra constructions that turn them into LCD
//! subspace codes. Two decoders and a channel simulator sit on top.

pub mod code;
pub mod constructions;
pub mod drg;
pub mod error;
pub mod field;
pub mod formats;
pub mod hadamard;
pub mod linalg;
pub mod scheme;
pub mod simulator;
pub mod subspace;

pub use code::{decode_naive, CodeParams, DecodeOutcome, ProjectionDecoder, SubspaceCode, Verdict};
pub use constructions::{
    theorem_pipeline, ConstructionReport, PartitionSpec, PipelineInput, PipelineOptions, TheoremKind,
};
pub use drg::{Graph, IntersectionArray, PermutationGroup};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use hadamard::{MatrixKind, UnbiasedSet};
pub use linalg::{IntMatrix, MatrixFq};
pub use scheme::{AssociationScheme, EquitablePartition, IntersectionNumbers};
pub use simulator::{run_experiment, ChannelSpec, TrialStats};
pub use subspace::Subspace;
