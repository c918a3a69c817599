//! Operator-channel simulation: send a random codeword, drop dimensions,
//! inject random vectors, then decode with both decoders.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! parallel runs reproduce sequential ones exactly.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{decode_naive, DecodeOutcome, ProjectionDecoder, SubspaceCode, Verdict};
use crate::error::{Error, Result};
use crate::linalg::MatrixFq;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelSpec {
    /// Dimensions dropped from the transmitted subspace.
    pub erasures: usize,
    /// Uniform random vectors adjoined afterwards.
    pub errors: usize,
    pub seed: u64,
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_matrix(rng: &mut ChaCha8Rng, codeword: &Subspace, rows: usize, cols: usize) -> MatrixFq {
    let field = codeword.field();
    let q = field.order();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    MatrixFq::from_vec(field, rows, cols, data).expect("sized")
}

fn corrupt_with(rng: &mut ChaCha8Rng, codeword: &Subspace, spec: &ChannelSpec) -> Result<Subspace> {
    let k = codeword.dim();
    let n = codeword.ambient_dim();
    if spec.erasures > k {
        return Err(Error::InvalidSpec(format!("{} erasures on a {k}-dimensional codeword", spec.erasures)));
    }
    if spec.errors > n {
        return Err(Error::InvalidSpec(format!("{} errors in ambient dimension {n}", spec.errors)));
    }
    let keep = k - spec.erasures;
    let kept = if keep == 0 {
        MatrixFq::zeros(codeword.field(), 0, n)
    } else {
        loop {
            let coeffs = random_matrix(rng, codeword, keep, k);
            if coeffs.rank() == keep {
                break coeffs.mul(codeword.basis())?;
            }
        }
    };
    let noise = random_matrix(rng, codeword, spec.errors, n);
    Ok(Subspace::row_space(&kept.vstack(&noise)?))
}

/// The received word for `trial`, drawn from that trial's corruption stream.
pub fn corrupt(codeword: &Subspace, spec: &ChannelSpec, trial: u64) -> Result<Subspace> {
    corrupt_with(&mut trial_rng(spec.seed, 2 * trial + 1), codeword, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub sent: usize,
    pub received_distance: usize,
    pub outcome: DecodeOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timings {
    pub naive_median_ns: u64,
    pub projection_median_ns: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialStats {
    pub trials: usize,
    pub correct: usize,
    pub failure: usize,
    pub wrong: usize,
    /// Mean of `d(received, sent)`.
    pub mean_received_distance: f64,
    /// Mean distance from the received word to the closest codeword.
    pub mean_decoded_distance: f64,
    pub agreement: usize,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
    pub informational: Timings,
}

impl PartialEq for TrialStats {
    /// Equal outcomes; timings are ignored.
    fn eq(&self, other: &TrialStats) -> bool {
        self.trials == other.trials
            && self.correct == other.correct
            && self.failure == other.failure
            && self.wrong == other.wrong
            && self.mean_received_distance == other.mean_received_distance
            && self.mean_decoded_distance == other.mean_decoded_distance
            && self.agreement == other.agreement
            && self.records == other.records
    }
}

fn median(mut v: Vec<u64>) -> u64 {
    if v.is_empty() {
        return 0;
    }
    v.sort_unstable();
    v[v.len() / 2]
}

/// Runs `trials` transmissions; fails if the two decoders ever disagree.
pub fn run_experiment(code: &SubspaceCode, spec: &ChannelSpec, trials: usize) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::InvalidSpec("at least one trial is needed".into()));
    }
    let min_dim = code.dims().iter().next().copied().unwrap_or(0);
    if spec.erasures > min_dim {
        return Err(Error::InvalidSpec(format!("{} erasures exceed the smallest codeword dimension {min_dim}", spec.erasures)));
    }
    let projection = ProjectionDecoder::new(code)?;
    let results = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let sent = trial_rng(spec.seed, 2 * trial).gen_range(0..code.len());
            let codeword = &code.codewords()[sent];
            let received = corrupt(codeword, spec, trial)?;
            let t0 = Instant::now();
            let naive = decode_naive(code, &received)?;
            let t1 = Instant::now();
            let proj = projection.decode(&received)?;
            let t2 = Instant::now();
            if naive != proj {
                return Err(Error::InternalInconsistency(format!(
                    "decoders disagree on trial {trial}: {naive:?} vs {proj:?}"
                )));
            }
            let record = TrialRecord { sent, received_distance: codeword.distance(&received)?, outcome: naive };
            Ok((record, (t1 - t0).as_nanos() as u64, (t2 - t1).as_nanos() as u64))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut stats = TrialStats {
        trials,
        correct: 0,
        failure: 0,
        wrong: 0,
        mean_received_distance: 0.0,
        mean_decoded_distance: 0.0,
        agreement: results.len(),
        records: Vec::with_capacity(trials),
        informational: Timings { naive_median_ns: 0, projection_median_ns: 0 },
    };
    let (mut sum_rx, mut sum_dec) = (0usize, 0usize);
    let (mut naive_ns, mut proj_ns) = (Vec::with_capacity(trials), Vec::with_capacity(trials));
    for (record, tn, tp) in results {
        match record.outcome.verdict {
            Verdict::Decoded(i) if i == record.sent => stats.correct += 1,
            Verdict::Decoded(_) => stats.wrong += 1,
            Verdict::Failure => stats.failure += 1,
        }
        sum_rx += record.received_distance;
        sum_dec += record.outcome.distance;
        naive_ns.push(tn);
        proj_ns.push(tp);
        stats.records.push(record);
    }
    stats.mean_received_distance = sum_rx as f64 / trials as f64;
    stats.mean_decoded_distance = sum_dec as f64 / trials as f64;
    stats.informational = Timings { naive_median_ns: median(naive_ns), projection_median_ns: median(proj_ns) };
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn lcd_code() -> SubspaceCode {
        // rows of [X | I] for X in {0, J} over F_3 with J the 3x3 all-ones matrix
        let f = FieldSpec::new(3, 1).unwrap();
        let words = [0u32, 1, 2]
            .iter()
            .map(|&c| {
                let x = MatrixFq::from_vec(&f, 3, 3, vec![c; 9]).unwrap();
                Subspace::row_space(&x.hstack(&MatrixFq::identity(&f, 3)).unwrap())
            })
            .collect();
        let code = SubspaceCode::new(words).unwrap();
        assert!(code.is_lcd_subspace_code().unwrap().lcd);
        code
    }

    #[test]
    fn corrupt_edge_cases() {
        let code = lcd_code();
        let w = &code.codewords()[1];
        let clean = ChannelSpec { erasures: 0, errors: 0, seed: 9 };
        assert_eq!(&corrupt(w, &clean, 3).unwrap(), w);
        let erase_all = ChannelSpec { erasures: 3, errors: 0, seed: 9 };
        assert_eq!(corrupt(w, &erase_all, 3).unwrap().dim(), 0);
        let erase_one = ChannelSpec { erasures: 1, errors: 0, seed: 9 };
        let r = corrupt(w, &erase_one, 0).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(r.is_subspace_of(w).unwrap());
        let too_many = ChannelSpec { erasures: 4, errors: 0, seed: 9 };
        assert!(matches!(corrupt(w, &too_many, 0), Err(Error::InvalidSpec(_))));
        let too_noisy = ChannelSpec { erasures: 0, errors: 7, seed: 9 };
        assert!(matches!(corrupt(w, &too_noisy, 0), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn noiseless_is_always_correct() {
        let stats = run_experiment(&lcd_code(), &ChannelSpec { erasures: 0, errors: 0, seed: 1 }, 50).unwrap();
        assert_eq!((stats.correct, stats.failure, stats.wrong, stats.agreement), (50, 0, 0, 50));
    }

    #[test]
    fn same_seed_same_stats() {
        let spec = ChannelSpec { erasures: 1, errors: 1, seed: 77 };
        let a = run_experiment(&lcd_code(), &spec, 200).unwrap();
        let b = run_experiment(&lcd_code(), &spec, 200).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.correct + a.failure + a.wrong, 200);
    }

    #[test]
    fn wrong_decodes_are_closer_than_the_sent_word() {
        let code = lcd_code();
        let spec = ChannelSpec { erasures: 2, errors: 2, seed: 5 };
        let stats = run_experiment(&code, &spec, 300).unwrap();
        for r in &stats.records {
            if let Verdict::Decoded(i) = r.outcome.verdict {
                if i != r.sent {
                    assert!(r.outcome.distance < r.received_distance);
                }
            }
            assert!(r.outcome.distance <= r.received_distance);
        }
        assert!(stats.failure > 0);
    }

    #[test]
    fn rejects_non_lcd_code() {
        let f = FieldSpec::new(2, 1).unwrap();
        let w = Subspace::span(&f, 2, &[vec![1, 1]]).unwrap();
        let code = SubspaceCode::new(vec![w]).unwrap();
        let err = run_experiment(&code, &ChannelSpec { erasures: 0, errors: 0, seed: 0 }, 1).unwrap_err();
        assert_eq!(err, Error::NotLcdCode { i: 0, j: 0 });
    }
}
