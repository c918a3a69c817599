//! Hadamard and weighing matrices: validation, unbiasedness, small-order
//! search, and the Gramian B-matrices of a set of regular Hadamard matrices.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::scheme::{quotient_matrices, EquitablePartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Hadamard,
    Weighing,
}

/// Exact integer square root.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

/// Checks `M M^T = M^T M = k I`.
fn gram_check(m: &IntMatrix, k: i64) -> Result<()> {
    let n = m.rows();
    for prod in [m.mul(&m.transpose())?, m.transpose().mul(m)?] {
        for r in 0..n {
            for c in 0..n {
                let expected = if r == c { k } else { 0 };
                let found = prod.get(r, c);
                if found != expected {
                    return Err(Error::GramFailure { row: r, col: c, expected, found });
                }
            }
        }
    }
    Ok(())
}

fn check_alphabet(m: &IntMatrix, allow_zero: bool) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !(v == 1 || v == -1 || (allow_zero && v == 0)) {
                return Err(Error::BadAlphabet { row: r, col: c, value: v });
            }
        }
    }
    Ok(())
}

/// A validated Hadamard matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    matrix: IntMatrix,
}

impl HadamardMatrix {
    pub fn new(matrix: IntMatrix) -> Result<HadamardMatrix> {
        check_alphabet(&matrix, false)?;
        gram_check(&matrix, matrix.rows() as i64)?;
        Ok(HadamardMatrix { matrix })
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    /// All row and column sums equal `sqrt(n)`.
    pub fn is_regular(&self) -> Result<bool> {
        let n = self.order();
        let s = exact_sqrt(n as u64).ok_or(Error::NotSquareOrder(n))? as i64;
        Ok(self.matrix.row_sums().iter().chain(&self.matrix.col_sums()).all(|&x| x == s))
    }

    /// Order `4n^2` with blocks of size `2n`: diagonal blocks all-ones, every
    /// off-diagonal block with zero row and column sums.
    pub fn is_bush_type(&self) -> Result<bool> {
        let n = self.order();
        let b = bush_block_size(n)?;
        let nb = n / b;
        for bi in 0..nb {
            for bj in 0..nb {
                let blk = self.matrix.block(bi, bj, b, b);
                let ok = if bi == bj {
                    blk == IntMatrix::ones(b)
                } else {
                    blk.row_sums().iter().chain(&blk.col_sums()).all(|&x| x == 0)
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Block size `2n` of a Bush-type matrix of order `4n^2`.
fn bush_block_size(order: usize) -> Result<usize> {
    match exact_sqrt(order as u64) {
        Some(s) if s % 2 == 0 => Ok(s as usize),
        _ => Err(Error::NotSquareOrder(order)),
    }
}

/// A validated weighing matrix `W(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeighingMatrix {
    matrix: IntMatrix,
    weight: usize,
}

impl WeighingMatrix {
    /// Validates `W W^T = k I`; the weight is read off the first row when not given.
    pub fn new(matrix: IntMatrix, weight: Option<usize>) -> Result<WeighingMatrix> {
        check_alphabet(&matrix, true)?;
        let weight = match weight {
            Some(k) => k,
            None => matrix.row(0).iter().filter(|&&v| v != 0).count(),
        };
        gram_check(&matrix, weight as i64)?;
        Ok(WeighingMatrix { matrix, weight })
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }
    pub fn weight(&self) -> usize {
        self.weight
    }
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// Validates a matrix of the given kind and returns its weight (the order
/// for Hadamard matrices).
pub fn validate(m: &IntMatrix, kind: MatrixKind, weight: Option<usize>) -> Result<usize> {
    match kind {
        MatrixKind::Hadamard => HadamardMatrix::new(m.clone()).map(|h| h.order()),
        MatrixKind::Weighing => WeighingMatrix::new(m.clone(), weight).map(|w| w.weight()),
    }
}

/// Sylvester matrix of order `2^k`.
pub fn sylvester(k: u32) -> Result<HadamardMatrix> {
    if k > 8 {
        return Err(Error::OrderTooLarge(1usize.checked_shl(k).unwrap_or(usize::MAX)));
    }
    let h1 = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]])?;
    let mut h = IntMatrix::from_rows(&[vec![1]])?;
    for _ in 0..k {
        h = h1.kron(&h)?;
    }
    HadamardMatrix::new(h)
}

/// Why a pair fails to be unbiased.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum UnbiasedWitness {
    NotPerfectSquare { value: usize },
    NotDivisible { row: usize, col: usize, value: i64 },
    InvalidQuotient { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbiasedCheck {
    pub unbiased: bool,
    /// `A B^T / sqrt(k)` when it is integral.
    pub quotient: Option<IntMatrix>,
    pub witness: Option<UnbiasedWitness>,
}

impl UnbiasedCheck {
    fn fail(witness: UnbiasedWitness, quotient: Option<IntMatrix>) -> Self {
        UnbiasedCheck { unbiased: false, quotient, witness: Some(witness) }
    }
}

/// `A B^T = sqrt(k) L` with `L` of the same kind and weight.
pub fn are_unbiased(a: &IntMatrix, b: &IntMatrix, kind: MatrixKind) -> Result<UnbiasedCheck> {
    let ka = validate(a, kind, None)?;
    let kb = validate(b, kind, None)?;
    if a.rows() != b.rows() || ka != kb {
        return Err(Error::DimensionMismatch(format!(
            "order/weight ({}, {ka}) against ({}, {kb})",
            a.rows(),
            b.rows()
        )));
    }
    let Some(s) = exact_sqrt(ka as u64) else {
        return Ok(UnbiasedCheck::fail(UnbiasedWitness::NotPerfectSquare { value: ka }, None));
    };
    let s = s as i64;
    let prod = a.mul(&b.transpose())?;
    let n = a.rows();
    let mut l = IntMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = prod.get(r, c);
            if v % s != 0 {
                return Ok(UnbiasedCheck::fail(UnbiasedWitness::NotDivisible { row: r, col: c, value: v }, None));
            }
            l.set(r, c, v / s);
        }
    }
    if let Err(e) = validate(&l, kind, Some(ka)) {
        return Ok(UnbiasedCheck::fail(UnbiasedWitness::InvalidQuotient { detail: e.to_string() }, Some(l)));
    }
    Ok(UnbiasedCheck { unbiased: true, quotient: Some(l), witness: None })
}

/// A set of pairwise unbiased matrices of one kind, order and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbiasedSet {
    kind: MatrixKind,
    order: usize,
    weight: usize,
    matrices: Vec<IntMatrix>,
}

impl UnbiasedSet {
    pub fn empty(kind: MatrixKind, order: usize, weight: usize) -> UnbiasedSet {
        UnbiasedSet { kind, order, weight, matrices: Vec::new() }
    }

    /// Validates every member and every pair.
    pub fn new(kind: MatrixKind, matrices: Vec<IntMatrix>) -> Result<UnbiasedSet> {
        let first = matrices.first().ok_or_else(|| Error::InvalidSpec("empty matrix set".into()))?;
        let order = first.rows();
        let weight = validate(first, kind, None)?;
        let mut set = UnbiasedSet::empty(kind, order, weight);
        for m in matrices {
            set.push(m)?;
        }
        Ok(set)
    }

    /// Adds a matrix after checking it against every member.
    pub fn push(&mut self, m: IntMatrix) -> Result<()> {
        let k = validate(&m, self.kind, Some(self.weight))?;
        if m.rows() != self.order || k != self.weight {
            return Err(Error::DimensionMismatch(format!("matrix of order {} in a set of order {}", m.rows(), self.order)));
        }
        for (i, other) in self.matrices.iter().enumerate() {
            let check = are_unbiased(other, &m, self.kind)?;
            if !check.unbiased {
                return Err(Error::IdentityFails(format!(
                    "matrices {i} and {} are not unbiased: {:?}",
                    self.matrices.len(),
                    check.witness
                )));
            }
        }
        self.matrices.push(m);
        Ok(())
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn weight(&self) -> usize {
        self.weight
    }
    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }
    pub fn len(&self) -> usize {
        self.matrices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// All 768 Hadamard matrices of order 4.
pub fn order4_hadamards() -> &'static [IntMatrix] {
    static ALL: OnceLock<Vec<IntMatrix>> = OnceLock::new();
    ALL.get_or_init(|| {
        (0u32..1 << 16)
            .filter_map(|bits| {
                let data = (0..16).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
                let m = IntMatrix::from_vec(4, 4, data).expect("4x4");
                HadamardMatrix::new(m).ok().map(HadamardMatrix::into_matrix)
            })
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of rows placed before giving up.
    pub budget: u64,
    /// Restrict the new matrix to Bush type.
    pub bush: bool,
    /// Stop early when the seed set already meets the known upper bound.
    pub use_bound: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 100_000_000, bush: false, use_bound: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nonexistence {
    /// The seed set already has the maximum possible size.
    Bound,
    /// The search tree was exhausted.
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(IntMatrix),
    Nonexistent(Nonexistence),
}

/// Largest order the search accepts.
pub const MAX_SEARCH_ORDER: usize = 64;
const MAX_CANDIDATES: u64 = 1 << 23;

/// Signed row as (support, negative) bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Row {
    support: u64,
    neg: u64,
}

impl Row {
    fn from_slice(v: &[i64]) -> Row {
        let mut row = Row { support: 0, neg: 0 };
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                row.support |= 1 << i;
            }
            if x < 0 {
                row.neg |= 1 << i;
            }
        }
        row
    }

    #[inline]
    fn dot(self, other: Row) -> i64 {
        let common = self.support & other.support;
        common.count_ones() as i64 - 2 * ((self.neg ^ other.neg) & common).count_ones() as i64
    }

    fn to_vec(self, n: usize) -> Vec<i64> {
        (0..n)
            .map(|i| match (self.support >> i & 1, self.neg >> i & 1) {
                (0, _) => 0,
                (_, 1) => -1,
                _ => 1,
            })
            .collect()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Masks of `n` bits with exactly `k` set, in increasing order.
fn masks_with_popcount(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

struct Search<'a> {
    order: usize,
    groups: Vec<Vec<Row>>,
    need: usize,
    bush_block: Option<usize>,
    budget: u64,
    nodes: u64,
    chosen: Vec<Row>,
    _seed: &'a UnbiasedSet,
}

impl Search<'_> {
    /// Zero column sums outside the group's own block.
    fn group_complete_ok(&self, g: usize) -> bool {
        let Some(b) = self.bush_block else { return true };
        let rows = &self.chosen[self.chosen.len() - self.need..];
        (0..self.order).filter(|c| c / b != g).all(|c| {
            let neg = rows.iter().filter(|r| r.neg >> c & 1 == 1).count();
            2 * neg == rows.len()
        })
    }

    fn dfs(&mut self, g: usize, placed: usize, lists: &[Vec<u32>]) -> Result<bool> {
        if placed == self.need {
            if !self.group_complete_ok(g) {
                return Ok(false);
            }
            if g + 1 == self.groups.len() {
                return Ok(true);
            }
            return self.dfs(g + 1, 0, &lists[1..]);
        }
        let current = &lists[0];
        for (pos, &ci) in current.iter().enumerate() {
            if current.len() - pos < self.need - placed {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted { nodes: self.budget });
            }
            let row = self.groups[g][ci as usize];
            let mut next = Vec::with_capacity(lists.len());
            let mut feasible = true;
            for (h, list) in lists.iter().enumerate() {
                let src = if h == 0 { &list[pos + 1..] } else { &list[..] };
                let group = &self.groups[g + h];
                let filtered: Vec<u32> = src.iter().copied().filter(|&j| group[j as usize].dot(row) == 0).collect();
                let required = if h == 0 { self.need - placed - 1 } else { self.need };
                if filtered.len() < required {
                    feasible = false;
                    break;
                }
                next.push(filtered);
            }
            if !feasible {
                continue;
            }
            self.chosen.push(row);
            if self.dfs(g, placed + 1, &next)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Backtracking search for one more matrix unbiased with every member of
/// `seed`. Rows are placed in increasing candidate order and normalized by
/// sign where the structure allows, which only removes equivalent solutions,
/// so an exhausted tree proves nonexistence.
pub fn search_unbiased_extension(seed: &UnbiasedSet, opts: &SearchOptions) -> Result<SearchOutcome> {
    if opts.budget == 0 {
        return Err(Error::BudgetExhausted { nodes: 0 });
    }
    let n = seed.order();
    let k = seed.weight();
    if n > MAX_SEARCH_ORDER || n == 0 {
        return Err(Error::OrderTooLarge(n));
    }
    if opts.bush && seed.kind() == MatrixKind::Weighing {
        return Err(Error::InvalidSpec("Bush-type search applies to Hadamard matrices".into()));
    }
    let root = exact_sqrt(k as u64);
    if !seed.is_empty() && root.is_none() {
        return Err(Error::NotPerfectSquare(k));
    }
    if opts.use_bound && seed.kind() == MatrixKind::Hadamard && !seed.is_empty() {
        let bound = if opts.bush { bush_block_size(n)? - 1 } else { n / 2 };
        if seed.len() >= bound {
            return Ok(SearchOutcome::Nonexistent(Nonexistence::Bound));
        }
    }
    let seed_rows: Vec<Row> =
        seed.matrices().iter().flat_map(|m| (0..n).map(move |r| Row::from_slice(m.row(r)))).collect();
    let s = root.unwrap_or(0) as i64;
    let admissible = |row: &Row| {
        seed_rows.iter().all(|&sr| {
            let d = sr.dot(*row);
            d == s || d == -s || (seed.kind() == MatrixKind::Weighing && d == 0)
        })
    };

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (groups, need, bush_block) = if opts.bush {
        let b = bush_block_size(n)?;
        let per_block = binomial(b as u64, b as u64 / 2);
        if per_block.saturating_pow(b as u32 - 1).saturating_mul(b as u64) > MAX_CANDIDATES {
            return Err(Error::OrderTooLarge(n));
        }
        let halves = masks_with_popcount(b, b / 2);
        let mut groups = Vec::with_capacity(b);
        for g in 0..b {
            let others: Vec<usize> = (0..b).filter(|&x| x != g).collect();
            let mut rows = Vec::new();
            let mut idx = vec![0usize; others.len()];
            loop {
                let neg = others.iter().zip(&idx).fold(0u64, |acc, (&blk, &i)| acc | halves[i] << (blk * b));
                let row = Row { support: full, neg };
                if admissible(&row) {
                    rows.push(row);
                }
                // odometer over the per-block choices, last block fastest
                let mut pos = others.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < halves.len() {
                        break;
                    }
                    idx[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX || others.is_empty() {
                    break;
                }
            }
            groups.push(rows);
        }
        (groups, b, Some(b))
    } else {
        let total = match seed.kind() {
            MatrixKind::Hadamard => 1u64 << (n - 1),
            MatrixKind::Weighing => binomial(n as u64, k as u64).saturating_mul(1 << k.saturating_sub(1)),
        };
        if total > MAX_CANDIDATES {
            return Err(Error::OrderTooLarge(n));
        }
        let supports = match seed.kind() {
            MatrixKind::Hadamard => vec![full],
            MatrixKind::Weighing => masks_with_popcount(n, k),
        };
        let mut rows = Vec::new();
        for &support in &supports {
            // first nonzero entry positive; remaining signs free
            let lead = support & support.wrapping_neg();
            let free = support & !lead;
            let mut sub = 0u64;
            loop {
                let row = Row { support, neg: sub };
                if admissible(&row) {
                    rows.push(row);
                }
                if sub == free {
                    break;
                }
                sub = (sub.wrapping_sub(free)) & free;
            }
        }
        rows.sort_by_key(|r| (r.support, r.neg));
        (vec![rows], n, None)
    };

    let lists: Vec<Vec<u32>> = groups.iter().map(|g| (0..g.len() as u32).collect()).collect();
    if lists.iter().any(|l| l.len() < need) {
        return Ok(SearchOutcome::Nonexistent(Nonexistence::Enumeration));
    }
    let mut search =
        Search { order: n, groups, need, bush_block, budget: opts.budget, nodes: 0, chosen: Vec::new(), _seed: seed };
    if !search.dfs(0, 0, &lists)? {
        return Ok(SearchOutcome::Nonexistent(Nonexistence::Enumeration));
    }
    let rows: Vec<Vec<i64>> = search.chosen.iter().map(|r| r.to_vec(n)).collect();
    let found = IntMatrix::from_rows(&rows)?;
    let mut check = seed.clone();
    check.push(found.clone())?;
    if opts.bush && !HadamardMatrix::new(found.clone())?.is_bush_type()? {
        return Err(Error::InternalInconsistency("search result is not Bush-type".into()));
    }
    Ok(SearchOutcome::Found(found))
}

/// The matrices `B`, `B_1`, `B_2`, `B_3` built from a set of mutually
/// unbiased regular Hadamard matrices of order `4n^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramianB {
    /// Half the square root of the order.
    pub n: usize,
    pub m: usize,
    pub b: IntMatrix,
    pub b1: IntMatrix,
    pub b2: IntMatrix,
    pub b3: IntMatrix,
}

/// Builds `B = 2n(M - I)` where `M` is the Gramian of the rows of
/// `{I, H_1/2n, ..., H_m/2n}`, kept in integers.
pub fn gramian_b(set: &UnbiasedSet) -> Result<GramianB> {
    if set.kind() != MatrixKind::Hadamard {
        return Err(Error::InvalidSpec("the Gramian construction needs Hadamard matrices".into()));
    }
    let m = set.len();
    if m < 2 {
        return Err(Error::InvalidSpec(format!("need at least two matrices, got {m}")));
    }
    let order = set.order();
    for (i, h) in set.matrices().iter().enumerate() {
        if !HadamardMatrix::new(h.clone())?.is_regular()? {
            return Err(Error::NotRegular(i));
        }
    }
    let two_n = exact_sqrt(order as u64).ok_or(Error::NotSquareOrder(order))? as i64;
    if two_n % 2 != 0 {
        return Err(Error::OddN(two_n as usize));
    }
    let n = (two_n / 2) as usize;
    if n % 2 != 0 {
        return Err(Error::OddN(n));
    }
    // 2n * S_i with S_0 = I and S_i = H_i / 2n
    let mut scaled = vec![IntMatrix::identity(order).scale(two_n)?];
    scaled.extend(set.matrices().iter().cloned());
    let zero = IntMatrix::zeros(order, order);
    let mut blocks: Vec<Vec<IntMatrix>> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            if i == j {
                row.push(zero.clone());
                continue;
            }
            let prod = scaled[i].mul(&scaled[j].transpose())?;
            let mut blk = IntMatrix::zeros(order, order);
            for r in 0..order {
                for c in 0..order {
                    let v = prod.get(r, c);
                    if v % two_n != 0 {
                        return Err(Error::InternalInconsistency(format!("Gramian block ({i},{j}) is not integral")));
                    }
                    blk.set(r, c, v / two_n);
                }
            }
            row.push(blk);
        }
        blocks.push(row);
    }
    let refs: Vec<Vec<&IntMatrix>> = blocks.iter().map(|r| r.iter().collect()).collect();
    let b = IntMatrix::from_blocks(&refs)?;
    if !b.is_symmetric() {
        return Err(Error::InternalInconsistency("B is not symmetric".into()));
    }
    let size = b.rows();
    let mut b1 = IntMatrix::zeros(size, size);
    let mut b2 = IntMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            match b.get(r, c) {
                1 => b1.set(r, c, 1),
                -1 => b2.set(r, c, 1),
                0 => {}
                v => return Err(Error::BadAlphabet { row: r, col: c, value: v }),
            }
        }
    }
    let eye = IntMatrix::identity(size);
    let b3 = IntMatrix::identity(m + 1).kron(&IntMatrix::ones(order))?.sub(&eye)?;
    if b1.add(&b2)?.add(&b3)?.add(&eye)? != IntMatrix::ones(size) {
        return Err(Error::InternalInconsistency("B_1, B_2, B_3 and I do not partition J".into()));
    }
    Ok(GramianB { n, m, b, b1, b2, b3 })
}

/// Quotients `M_i = (C^T C)^{-1} C^T H_i C` of each member over an
/// equal-cell equitable partition.
pub fn partition_quotients_of_set(set: &UnbiasedSet, partition: &EquitablePartition) -> Result<Vec<IntMatrix>> {
    if partition.equal_cell_size().is_none() {
        return Err(Error::UnequalCells);
    }
    Ok(quotient_matrices(partition, set.matrices())?.matrices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> IntMatrix {
        IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(HadamardMatrix::new(h2()).unwrap().order(), 2);
        let s4 = sylvester(2).unwrap();
        assert!(!s4.is_regular().unwrap());
        assert_eq!(s4.matrix().row_sums(), vec![4, 0, 0, 0]);
        assert_eq!(WeighingMatrix::new(IntMatrix::identity(5), None).unwrap().weight(), 1);
        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(HadamardMatrix::new(bad), Err(Error::GramFailure { .. })));
        let zero = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(HadamardMatrix::new(zero).unwrap_err(), Error::BadAlphabet { row: 0, col: 1, value: 0 });
        assert_eq!(HadamardMatrix::new(h2()).unwrap().is_regular().unwrap_err(), Error::NotSquareOrder(2));
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester(0).unwrap().matrix(), &IntMatrix::from_rows(&[vec![1]]).unwrap());
        assert_eq!(sylvester(1).unwrap().matrix(), &h2());
        assert_eq!(sylvester(4).unwrap().order(), 16);
        assert_eq!(sylvester(9).unwrap_err(), Error::OrderTooLarge(512));
    }

    #[test]
    fn unbiased_examples() {
        let s4 = sylvester(2).unwrap().into_matrix();
        let same = are_unbiased(&s4, &s4, MatrixKind::Hadamard).unwrap();
        assert!(!same.unbiased);
        assert!(matches!(same.witness, Some(UnbiasedWitness::InvalidQuotient { .. })));
        let two = are_unbiased(&h2(), &h2(), MatrixKind::Hadamard).unwrap();
        assert_eq!(two.witness, Some(UnbiasedWitness::NotPerfectSquare { value: 2 }));
    }

    #[test]
    fn order4_enumeration() {
        let all = order4_hadamards();
        assert_eq!(all.len(), 768);
        let s4 = sylvester(2).unwrap().into_matrix();
        let mates: Vec<&IntMatrix> =
            all.iter().filter(|m| are_unbiased(&s4, m, MatrixKind::Hadamard).unwrap().unbiased).collect();
        assert!(!mates.is_empty());
        // symmetry of the relation
        for m in &mates {
            assert!(are_unbiased(m, &s4, MatrixKind::Hadamard).unwrap().unbiased);
        }
        // no third matrix unbiased with a pair
        let pair = [s4.clone(), mates[0].clone()];
        assert!(!all.iter().any(|m| pair.iter().all(|p| are_unbiased(p, m, MatrixKind::Hadamard).unwrap().unbiased)));
    }

    #[test]
    fn search_order4() {
        let s4 = sylvester(2).unwrap().into_matrix();
        let seed = UnbiasedSet::new(MatrixKind::Hadamard, vec![s4.clone()]).unwrap();
        let SearchOutcome::Found(mate) = search_unbiased_extension(&seed, &SearchOptions::default()).unwrap() else {
            panic!("no mate")
        };
        assert!(are_unbiased(&s4, &mate, MatrixKind::Hadamard).unwrap().unbiased);
        let pair = UnbiasedSet::new(MatrixKind::Hadamard, vec![s4, mate]).unwrap();
        assert_eq!(
            search_unbiased_extension(&pair, &SearchOptions::default()).unwrap(),
            SearchOutcome::Nonexistent(Nonexistence::Bound)
        );
        let full = SearchOptions { use_bound: false, ..SearchOptions::default() };
        assert_eq!(
            search_unbiased_extension(&pair, &full).unwrap(),
            SearchOutcome::Nonexistent(Nonexistence::Enumeration)
        );
        let zero = SearchOptions { budget: 0, ..SearchOptions::default() };
        assert_eq!(search_unbiased_extension(&seed, &zero).unwrap_err(), Error::BudgetExhausted { nodes: 0 });
    }

    #[test]
    fn search_is_deterministic() {
        let s16 = sylvester(4).unwrap().into_matrix();
        let seed = UnbiasedSet::new(MatrixKind::Hadamard, vec![s16]).unwrap();
        let a = search_unbiased_extension(&seed, &SearchOptions::default()).unwrap();
        let b = search_unbiased_extension(&seed, &SearchOptions::default()).unwrap();
        assert!(matches!(a, SearchOutcome::Found(_)));
        assert_eq!(a, b);
    }

    #[test]
    fn bush_search_order16() {
        let bush = SearchOptions { bush: true, ..SearchOptions::default() };
        let empty = UnbiasedSet::empty(MatrixKind::Hadamard, 16, 16);
        let SearchOutcome::Found(h1) = search_unbiased_extension(&empty, &bush).unwrap() else { panic!() };
        let h1v = HadamardMatrix::new(h1.clone()).unwrap();
        assert!(h1v.is_bush_type().unwrap());
        assert!(h1v.is_regular().unwrap());
    }

    #[test]
    fn weighing_basics() {
        // W(4,3): conference-type matrix
        let w = IntMatrix::from_rows(&[vec![0, 1, 1, 1], vec![-1, 0, 1, -1], vec![-1, -1, 0, 1], vec![-1, 1, -1, 0]])
            .unwrap();
        assert_eq!(WeighingMatrix::new(w.clone(), None).unwrap().weight(), 3);
        let empty = UnbiasedSet::empty(MatrixKind::Weighing, 4, 3);
        let SearchOutcome::Found(found) = search_unbiased_extension(&empty, &SearchOptions::default()).unwrap() else {
            panic!()
        };
        assert_eq!(WeighingMatrix::new(found, Some(3)).unwrap().weight(), 3);
        let seed = UnbiasedSet::new(MatrixKind::Weighing, vec![w]).unwrap();
        assert_eq!(search_unbiased_extension(&seed, &SearchOptions::default()).unwrap_err(), Error::NotPerfectSquare(3));
    }

    #[test]
    fn gramian_needs_regular_pair() {
        let s16 = sylvester(4).unwrap().into_matrix();
        let seed = UnbiasedSet::new(MatrixKind::Hadamard, vec![s16]).unwrap();
        let SearchOutcome::Found(m) = search_unbiased_extension(&seed, &SearchOptions::default()).unwrap() else {
            panic!()
        };
        let mut pair = seed.clone();
        pair.push(m).unwrap();
        assert_eq!(gramian_b(&pair).unwrap_err(), Error::NotRegular(0));
        assert!(gramian_b(&seed).is_err());
    }

    #[test]
    fn set_quotients() {
        let s4 = sylvester(2).unwrap().into_matrix();
        let set = UnbiasedSet::new(MatrixKind::Hadamard, vec![s4.clone()]).unwrap();
        let q = partition_quotients_of_set(&set, &EquitablePartition::singletons(4)).unwrap();
        assert_eq!(q, vec![s4]);
        let uneven = EquitablePartition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(partition_quotients_of_set(&set, &uneven).unwrap_err(), Error::UnequalCells);
    }
}
