//! Symmetric association schemes, equitable partitions and their quotient
//! matrices, and the divisibility screen on intersection numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::linalg::IntMatrix;

/// Intersection numbers `p_{i,j}^k` of a `d`-class scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionNumbers {
    classes: usize,
    data: Vec<i64>,
}

impl IntersectionNumbers {
    pub fn zeros(classes: usize) -> Self {
        let n = classes + 1;
        IntersectionNumbers { classes, data: vec![0; n * n * n] }
    }

    /// Number of non-identity classes `d`.
    pub fn classes(&self) -> usize {
        self.classes
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.classes + 1;
        (i * n + j) * n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i64) {
        let idx = self.idx(i, j, k);
        self.data[idx] = v;
    }

    /// `k_i = p_{i,i}^0`.
    pub fn valency(&self, i: usize) -> i64 {
        self.get(i, i, 0)
    }

    /// Whether `p` divides `p_{i,j}^k` for every `k`; returns the first
    /// offending `k` otherwise.
    pub fn divisible(&self, p: u64, i: usize, j: usize) -> std::result::Result<(), usize> {
        match (0..=self.classes).find(|&k| self.get(i, j, k).rem_euclid(p as i64) != 0) {
            Some(k) => Err(k),
            None => Ok(()),
        }
    }

    /// Checks `p | p_{i,j}^k` for all `i, j` in `set` and all `k`.
    pub fn check_divisibility(&self, p: u64, set: &[usize]) -> Result<()> {
        for &i in set {
            for &j in set {
                if i > self.classes || j > self.classes {
                    return Err(Error::IndexOutOfRange { index: i.max(j), len: self.classes + 1 });
                }
                if let Err(k) = self.divisible(p, i, j) {
                    return Err(Error::DivisibilityFails { p, i, j, k, value: self.get(i, j, k) });
                }
            }
        }
        Ok(())
    }
}

/// A symmetric association scheme given by its relation matrices.
#[derive(Debug, Clone)]
pub struct AssociationScheme {
    points: usize,
    adjacency: Vec<IntMatrix>,
    numbers: IntersectionNumbers,
}

impl AssociationScheme {
    pub fn points(&self) -> usize {
        self.points
    }
    pub fn classes(&self) -> usize {
        self.adjacency.len() - 1
    }
    pub fn adjacency(&self) -> &[IntMatrix] {
        &self.adjacency
    }
    pub fn intersection_numbers(&self) -> &IntersectionNumbers {
        &self.numbers
    }
    pub fn p(&self, i: usize, j: usize, k: usize) -> i64 {
        self.numbers.get(i, j, k)
    }

    /// Validates the axioms and computes `p_{i,j}^k` by matching `A_i A_j`
    /// against the relation matrices.
    pub fn from_matrices(mats: Vec<IntMatrix>) -> Result<AssociationScheme> {
        let n = mats.first().map(IntMatrix::rows).ok_or_else(|| Error::NotAPartition("no relations".into()))?;
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!("relation of size {}x{} in a scheme on {n} points", m.rows(), m.cols())));
            }
            for r in 0..n {
                for c in 0..n {
                    let v = m.get(r, c);
                    if v != 0 && v != 1 {
                        return Err(Error::BadAlphabet { row: r, col: c, value: v });
                    }
                }
            }
        }
        let mut class_of = vec![usize::MAX; n * n];
        for (i, m) in mats.iter().enumerate() {
            if m.is_zero() {
                return Err(Error::NotAPartition(format!("relation {i} is empty")));
            }
            for (cell, &v) in class_of.iter_mut().zip(m.data()) {
                if v == 1 {
                    if *cell != usize::MAX {
                        return Err(Error::NotAPartition(format!("relations {} and {i} overlap", *cell)));
                    }
                    *cell = i;
                }
            }
        }
        if let Some(pos) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAPartition(format!("pair ({}, {}) lies in no relation", pos / n, pos % n)));
        }
        if mats[0] != IntMatrix::identity(n) {
            return Err(Error::MissingIdentity);
        }
        if let Some(i) = mats.iter().position(|m| !m.is_symmetric()) {
            return Err(Error::NotSymmetric(i));
        }

        let d = mats.len() - 1;
        let reps: Vec<usize> =
            (0..=d).map(|k| class_of.iter().position(|&c| c == k).expect("relations are nonempty")).collect();
        let mut numbers = IntersectionNumbers::zeros(d);
        for i in 0..=d {
            for j in i..=d {
                let prod = mats[i].mul(&mats[j])?;
                let coeffs: Vec<i64> = reps.iter().map(|&pos| prod.data()[pos]).collect();
                if let Some(pos) = (0..n * n).find(|&pos| prod.data()[pos] != coeffs[class_of[pos]]) {
                    return Err(Error::NotClosed { i, j, k: class_of[pos] });
                }
                for (k, &c) in coeffs.iter().enumerate() {
                    numbers.set(i, j, k, c);
                    numbers.set(j, i, k, c);
                }
            }
        }
        let scheme = AssociationScheme { points: n, adjacency: mats, numbers };
        scheme.spot_check(&class_of, 10)?;
        Ok(scheme)
    }

    /// Recounts `p_{i,j}^k` combinatorially on random pairs of each class.
    fn spot_check(&self, class_of: &[usize], per_class: usize) -> Result<()> {
        let n = self.points;
        let d = self.classes();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for k in 0..=d {
            let members: Vec<usize> = (0..n * n).filter(|&pos| class_of[pos] == k).collect();
            for _ in 0..per_class {
                let pos = members[rng.gen_range(0..members.len())];
                let (x, y) = (pos / n, pos % n);
                let mut counts = vec![0i64; (d + 1) * (d + 1)];
                for z in 0..n {
                    counts[class_of[x * n + z] * (d + 1) + class_of[z * n + y]] += 1;
                }
                for i in 0..=d {
                    for j in 0..=d {
                        if counts[i * (d + 1) + j] != self.p(i, j, k) {
                            return Err(Error::InternalInconsistency(format!(
                                "p^{k}_({i},{j}) = {} from products but {} by counting at ({x},{y})",
                                self.p(i, j, k),
                                counts[i * (d + 1) + j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A partition of `{0..points}` into nonempty cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquitablePartition {
    points: usize,
    cells: Vec<Vec<usize>>,
    #[serde(skip)]
    cell_of: Vec<usize>,
}

impl EquitablePartition {
    pub fn new(points: usize, cells: Vec<Vec<usize>>) -> Result<EquitablePartition> {
        let mut cell_of = vec![usize::MAX; points];
        let mut cells = cells;
        for (ci, cell) in cells.iter_mut().enumerate() {
            if cell.is_empty() {
                return Err(Error::NotAPartition(format!("cell {ci} is empty")));
            }
            cell.sort_unstable();
            for &x in cell.iter() {
                if x >= points {
                    return Err(Error::IndexOutOfRange { index: x, len: points });
                }
                if cell_of[x] != usize::MAX {
                    return Err(Error::NotAPartition(format!("point {x} appears twice")));
                }
                cell_of[x] = ci;
            }
        }
        if let Some(x) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAPartition(format!("point {x} is in no cell")));
        }
        Ok(EquitablePartition { points, cells, cell_of })
    }

    pub fn singletons(points: usize) -> EquitablePartition {
        Self::new(points, (0..points).map(|x| vec![x]).collect()).expect("singletons partition")
    }

    pub fn one_cell(points: usize) -> EquitablePartition {
        Self::new(points, vec![(0..points).collect()]).expect("one cell partition")
    }

    /// Consecutive blocks of `size` points.
    pub fn consecutive_blocks(points: usize, size: usize) -> Result<EquitablePartition> {
        if size == 0 || points % size != 0 {
            return Err(Error::UnequalCells);
        }
        Self::new(points, (0..points / size).map(|b| (b * size..(b + 1) * size).collect()).collect())
    }

    pub fn points(&self) -> usize {
        self.points
    }
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
    pub fn cell_of(&self, x: usize) -> usize {
        self.cell_of[x]
    }

    /// The common cell size, if all cells have the same size.
    pub fn equal_cell_size(&self) -> Option<usize> {
        let s = self.cells[0].len();
        self.cells.iter().all(|c| c.len() == s).then_some(s)
    }

    /// `points x t` characteristic matrix.
    pub fn char_matrix(&self) -> IntMatrix {
        let mut h = IntMatrix::zeros(self.points, self.cells.len());
        for (x, &c) in self.cell_of.iter().enumerate() {
            h.set(x, c, 1);
        }
        h
    }

    fn check_size(&self, m: &IntMatrix) -> Result<()> {
        if m.rows() != self.points || m.cols() != self.points {
            return Err(Error::IndexOutOfRange { index: self.points.saturating_sub(1).max(m.rows()), len: m.rows().min(self.points) });
        }
        Ok(())
    }

    /// Sums of each row of `m` over each cell: `points x t`.
    fn block_row_sums(&self, m: &IntMatrix) -> Vec<i64> {
        let t = self.cells.len();
        let mut s = vec![0i64; self.points * t];
        for x in 0..self.points {
            for (y, &v) in m.row(x).iter().enumerate() {
                s[x * t + self.cell_of[y]] += v;
            }
        }
        s
    }
}

/// Result of an equitability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquitableCheck {
    pub equitable: bool,
    /// `(matrix, cell_a, cell_b, axis)` of the first non-constant block.
    pub witness: Option<(usize, usize, usize, &'static str)>,
}

/// Every block of every matrix has constant row sums and constant column sums.
pub fn verify_equitable(partition: &EquitablePartition, mats: &[IntMatrix]) -> Result<EquitableCheck> {
    let t = partition.cell_count();
    for (mi, m) in mats.iter().enumerate() {
        partition.check_size(m)?;
        for (axis, sums) in [("row", partition.block_row_sums(m)), ("column", partition.block_row_sums(&m.transpose()))] {
            for (a, cell) in partition.cells.iter().enumerate() {
                let first = cell[0];
                for &x in &cell[1..] {
                    if let Some(b) = (0..t).find(|&b| sums[x * t + b] != sums[first * t + b]) {
                        return Ok(EquitableCheck { equitable: false, witness: Some((mi, a, b, axis)) });
                    }
                }
            }
        }
    }
    Ok(EquitableCheck { equitable: true, witness: None })
}

/// Quotient matrices `M_i` with `A_i H = H M_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSet {
    pub matrices: Vec<IntMatrix>,
    pub equal_cells: bool,
}

/// `M_i = (H^T H)^{-1} H^T A_i H`, checked integral and checked against
/// `A_i H = H M_i`.
pub fn quotient_matrices(partition: &EquitablePartition, mats: &[IntMatrix]) -> Result<QuotientSet> {
    let check = verify_equitable(partition, mats)?;
    if let Some((matrix, cell_a, cell_b, axis)) = check.witness {
        return Err(Error::NotEquitable { matrix, cell_a, cell_b, axis });
    }
    let h = partition.char_matrix();
    let ht = h.transpose();
    let t = partition.cell_count();
    let mut out = Vec::with_capacity(mats.len());
    for (mi, a) in mats.iter().enumerate() {
        let ah = a.mul(&h)?;
        let hah = ht.mul(&ah)?;
        let mut m = IntMatrix::zeros(t, t);
        for r in 0..t {
            let size = partition.cells[r].len() as i64;
            for c in 0..t {
                let v = hah.get(r, c);
                if v % size != 0 {
                    return Err(Error::NonIntegralQuotient { matrix: mi, row: r, col: c });
                }
                m.set(r, c, v / size);
            }
        }
        if ah != h.mul(&m)? {
            return Err(Error::InternalInconsistency(format!("A_{mi} H != H M_{mi}")));
        }
        out.push(m);
    }
    let equal_cells = partition.equal_cell_size().is_some();
    if equal_cells {
        for (mi, (a, m)) in mats.iter().zip(&out).enumerate() {
            if a.is_symmetric() && !m.is_symmetric() {
                return Err(Error::InternalInconsistency(format!("quotient M_{mi} of a symmetric matrix is not symmetric")));
            }
        }
    }
    Ok(QuotientSet { matrices: out, equal_cells })
}

/// Checks `M_i M_j = sum_k p_{i,j}^k M_k` for all `i, j`; returns the first
/// failing `(i, j)`.
pub fn verify_quotient_algebra(numbers: &IntersectionNumbers, quotients: &QuotientSet) -> Result<Option<(usize, usize)>> {
    let ms = &quotients.matrices;
    let d = numbers.classes();
    if ms.len() != d + 1 {
        return Err(Error::DimensionMismatch(format!("{} quotients for a {d}-class scheme", ms.len())));
    }
    let t = ms[0].rows();
    for i in 0..=d {
        for j in 0..=d {
            let lhs = ms[i].mul(&ms[j])?;
            let mut rhs = IntMatrix::zeros(t, t);
            for (k, mk) in ms.iter().enumerate() {
                let c = numbers.get(i, j, k);
                if c != 0 {
                    rhs = rhs.add(&mk.scale(c)?)?;
                }
            }
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Maximal index sets `I ⊆ {0..d}` with `p | p_{i,j}^k` for all `i, j ∈ I`
/// and all `k`, sorted lexicographically.
pub fn divisibility_screen(numbers: &IntersectionNumbers, p: u64) -> Result<Vec<Vec<usize>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = numbers.classes();
    if d > 20 {
        return Err(Error::TooManyClasses(d));
    }
    let vertices: Vec<usize> = (0..=d).filter(|&i| numbers.divisible(p, i, i).is_ok()).collect();
    let mut adj = vec![0u32; d + 1];
    for &i in &vertices {
        for &j in &vertices {
            if i != j && numbers.divisible(p, i, j).is_ok() {
                adj[i] |= 1 << j;
            }
        }
    }
    let all = vertices.iter().fold(0u32, |acc, &v| acc | 1 << v);
    let mut cliques = Vec::new();
    bron_kerbosch(0, all, 0, &adj, &mut cliques);
    let mut out: Vec<Vec<usize>> =
        cliques.into_iter().map(|c| (0..=d).filter(|&v| c & (1 << v) != 0).collect()).collect();
    out.sort();
    Ok(out)
}

fn bron_kerbosch(r: u32, mut p: u32, mut x: u32, adj: &[u32], out: &mut Vec<u32>) {
    if p == 0 {
        if x == 0 && r != 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(r | 1 << v, p & adj[v], x & adj[v], adj, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}
