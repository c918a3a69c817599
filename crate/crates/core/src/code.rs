//! Subspace codes: parameters, the LCD subspace code test, and the two
//! minimum-distance decoders.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::MatrixFq;
use crate::subspace::Subspace;

/// Exhaustive minimum-distance computations stop at this many pairs.
pub const PAIR_BUDGET: u128 = 10_000_000;

/// A deduplicated, canonically ordered set of subspaces of `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceCode {
    field: FieldSpec,
    n: usize,
    codewords: Vec<Subspace>,
    dims: BTreeSet<usize>,
}

/// `(n, #C, d; K)_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub size: usize,
    /// Absent for single-codeword codes.
    pub d: Option<usize>,
    #[serde(rename = "K")]
    pub dims: Vec<usize>,
    pub q: u32,
    pub constant_dimension: bool,
    /// False when `d` is the minimum over a random sample of pairs, hence
    /// only an upper bound on the true minimum distance.
    pub exhaustive: bool,
}

/// Result of the LCD subspace code test with the first violating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcdCodeCheck {
    pub lcd: bool,
    /// `(i, j)` with `C_i ∩ C_j^⊥ ≠ {0}`, lowest `(i, j)` first.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Decoded(usize),
    Failure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecodeOutcome {
    pub verdict: Verdict,
    /// Distance from the received word to the closest codeword(s).
    pub distance: usize,
}

impl DecodeOutcome {
    fn from_distances(distances: impl IntoIterator<Item = usize>) -> DecodeOutcome {
        let mut best = usize::MAX;
        let mut winner = None;
        let mut ties = 0;
        for (i, d) in distances.into_iter().enumerate() {
            if d < best {
                best = d;
                winner = Some(i);
                ties = 1;
            } else if d == best {
                ties += 1;
            }
        }
        let verdict = match (winner, ties) {
            (Some(i), 1) => Verdict::Decoded(i),
            _ => Verdict::Failure,
        };
        DecodeOutcome { verdict, distance: best }
    }
}

impl SubspaceCode {
    pub fn new(subspaces: Vec<Subspace>) -> Result<SubspaceCode> {
        let first = subspaces.first().ok_or(Error::EmptyCode)?;
        let field = first.field().clone();
        let n = first.ambient_dim();
        for s in &subspaces {
            if !s.field().same(&field) {
                return Err(Error::FieldMismatch);
            }
            if s.ambient_dim() != n {
                return Err(Error::AmbientMismatch(n, s.ambient_dim()));
            }
        }
        let codewords: Vec<Subspace> = subspaces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let dims = codewords.iter().map(Subspace::dim).collect();
        Ok(SubspaceCode { field, n, codewords, dims })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.codewords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }
    pub fn dims(&self) -> &BTreeSet<usize> {
        &self.dims
    }

    fn pair_count(&self) -> u128 {
        let m = self.codewords.len() as u128;
        m * m.saturating_sub(1) / 2
    }

    /// Minimum distance over all pairs of distinct codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.codewords.len() < 2 {
            return Err(Error::DegenerateCode);
        }
        let pairs = self.pair_count();
        if pairs > PAIR_BUDGET {
            return Err(Error::PairBudgetExceeded { pairs, budget: PAIR_BUDGET });
        }
        let cw = &self.codewords;
        (0..cw.len())
            .into_par_iter()
            .map(|i| {
                (i + 1..cw.len()).try_fold(usize::MAX, |best, j| Ok(best.min(cw[i].distance(&cw[j])?)))
            })
            .try_reduce(|| usize::MAX, |a, b| Ok(a.min(b)))
    }

    fn params_with(&self, d: Option<usize>, exhaustive: bool) -> CodeParams {
        CodeParams {
            n: self.n,
            size: self.codewords.len(),
            d,
            dims: self.dims.iter().copied().collect(),
            q: self.field.order(),
            constant_dimension: self.dims.len() == 1,
            exhaustive,
        }
    }

    /// Exact parameters; `d` is absent for a single-codeword code.
    pub fn params(&self) -> Result<CodeParams> {
        let d = match self.min_distance() {
            Ok(d) => Some(d),
            Err(Error::DegenerateCode) => None,
            Err(e) => return Err(e),
        };
        Ok(self.params_with(d, true))
    }

    /// Exact parameters when the pair budget allows it, otherwise the minimum
    /// over `samples` random pairs (flagged non-exhaustive).
    pub fn params_or_sampled(&self, samples: usize, seed: u64) -> Result<CodeParams> {
        match self.params() {
            Err(Error::PairBudgetExceeded { .. }) => {}
            other => return other,
        }
        let m = self.codewords.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> = (0..samples)
            .map(|_| {
                let i = rng.gen_range(0..m);
                let mut j = rng.gen_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                (i, j)
            })
            .collect();
        let cw = &self.codewords;
        let d = pairs
            .par_iter()
            .map(|&(i, j)| cw[i].distance(&cw[j]))
            .try_reduce(|| usize::MAX, |a, b| Ok(a.min(b)))?;
        Ok(self.params_with(Some(d), false))
    }

    /// `C_i ∩ C_j^⊥ = {0}` for every ordered pair, including `i = j`.
    ///
    /// The intersection dimension is `n - dim(C_i^⊥ + C_j)`.
    pub fn is_lcd_subspace_code(&self) -> Result<LcdCodeCheck> {
        let cw = &self.codewords;
        let duals: Vec<Subspace> = cw.par_iter().map(Subspace::dual).collect();
        let n = self.n;
        let meets = |i: usize, j: usize| -> Result<bool> { Ok(duals[i].sum(&cw[j])?.dim() < n) };
        let first_bad = (0..cw.len())
            .into_par_iter()
            .map(|i| -> Result<Option<(usize, usize)>> {
                for j in 0..cw.len() {
                    if meets(i, j)? {
                        return Ok(Some((i, j)));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        Ok(LcdCodeCheck { lcd: first_bad.is_none(), witness: first_bad })
    }

    /// The LCD condition restricted to the given ordered pairs.
    pub fn is_lcd_on_pairs(&self, pairs: &[(usize, usize)]) -> Result<LcdCodeCheck> {
        let cw = &self.codewords;
        let bad = pairs
            .par_iter()
            .map(|&(i, j)| -> Result<bool> { Ok(cw[i].dual().sum(&cw[j])?.dim() < self.n) })
            .collect::<Result<Vec<bool>>>()?;
        let witness = pairs.iter().zip(bad).find(|(_, b)| *b).map(|(p, _)| *p);
        Ok(LcdCodeCheck { lcd: witness.is_none(), witness })
    }

    fn check_received(&self, received: &Subspace) -> Result<()> {
        if !received.field().same(&self.field) {
            return Err(Error::FieldMismatch);
        }
        if received.ambient_dim() != self.n {
            return Err(Error::AmbientMismatch(self.n, received.ambient_dim()));
        }
        Ok(())
    }
}

/// Minimum subspace-distance decoding by direct evaluation of
/// `dim(U + W) - dim(U ∩ W)` against every codeword. Ties give `Failure`.
pub fn decode_naive(code: &SubspaceCode, received: &Subspace) -> Result<DecodeOutcome> {
    code.check_received(received)?;
    let distances = code.codewords.iter().map(|c| c.distance(received)).collect::<Result<Vec<_>>>()?;
    Ok(DecodeOutcome::from_distances(distances))
}

/// Decoder for LCD subspace codes using precomputed projections onto the
/// codeword duals: `d_s(C_i, C) = dim C_i + 2 dim π_{C_i^⊥}(C) - dim C`.
#[derive(Debug, Clone)]
pub struct ProjectionDecoder {
    field: FieldSpec,
    n: usize,
    dims: Vec<usize>,
    projectors: Vec<MatrixFq>,
}

impl ProjectionDecoder {
    pub fn new(code: &SubspaceCode) -> Result<ProjectionDecoder> {
        let check = code.is_lcd_subspace_code()?;
        if let Some((i, j)) = check.witness {
            return Err(Error::NotLcdCode { i, j });
        }
        let projectors =
            code.codewords.par_iter().map(Subspace::projector_complement).collect::<Result<Vec<_>>>()?;
        Ok(ProjectionDecoder {
            field: code.field.clone(),
            n: code.n,
            dims: code.codewords.iter().map(Subspace::dim).collect(),
            projectors,
        })
    }

    pub fn decode(&self, received: &Subspace) -> Result<DecodeOutcome> {
        self.decode_generators(received.basis())
    }

    /// Decodes the span of the rows of `generators` without canonicalizing it
    /// first.
    pub fn decode_generators(&self, generators: &MatrixFq) -> Result<DecodeOutcome> {
        if !generators.field().same(&self.field) {
            return Err(Error::FieldMismatch);
        }
        if generators.cols() != self.n {
            return Err(Error::AmbientMismatch(self.n, generators.cols()));
        }
        let received_dim = generators.rank();
        let distances = self
            .projectors
            .iter()
            .zip(&self.dims)
            .map(|(p, &dim_c)| Ok(dim_c + 2 * generators.mul(p)?.rank() - received_dim))
            .collect::<Result<Vec<_>>>()?;
        Ok(DecodeOutcome::from_distances(distances))
    }
}

/// Classical LCD test of the code generated by `g`: `det(G G^T) ≠ 0`.
pub fn classical_lcd_check(g: &MatrixFq) -> Result<bool> {
    let rank = g.rank();
    if rank < g.rows() {
        return Err(Error::RankDeficient { rank, rows: g.rows() });
    }
    Ok(g.mul(&g.transpose())?.det()? != 0)
}
