//! Shared fixtures for the benchmarks.

use lcd_core::constructions::{theorem_pipeline, PartitionSpec, PipelineInput, PipelineOptions, TheoremKind};
use lcd_core::formats::parse_matrices;
use lcd_core::simulator::{corrupt, ChannelSpec};
use lcd_core::{FieldSpec, IntMatrix, MatrixFq, MatrixKind, Subspace, SubspaceCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUSH_PAIR: &str = include_str!("../../core/data/bush16_pair.txt");

pub fn bush_pair() -> Vec<IntMatrix> {
    parse_matrices(BUSH_PAIR).unwrap().into_iter().map(|m| m.into_int().unwrap()).collect()
}

pub fn random_matrix(field: &FieldSpec, rows: usize, cols: usize, seed: u64) -> MatrixFq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| rng.gen_range(0..field.order())).collect();
    MatrixFq::from_vec(field, rows, cols, data).unwrap()
}

/// The 8-class Bush construction over F_2 with singleton cells: 31 words in F_2^192.
pub fn bush_code() -> SubspaceCode {
    let input = PipelineInput::Matrices {
        kind: MatrixKind::Hadamard,
        matrices: bush_pair(),
        partition: PartitionSpec::Singletons,
    };
    theorem_pipeline(TheoremKind::Thm59, &input, &PipelineOptions::new(2, 1)).unwrap().code
}

/// Received words from random codewords of `code`.
pub fn received_words(code: &SubspaceCode, spec: &ChannelSpec, count: usize) -> Vec<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..count as u64)
        .map(|t| corrupt(&code.codewords()[rng.gen_range(0..code.len())], spec, t).unwrap())
        .collect()
}
