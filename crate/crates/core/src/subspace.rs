//! Subspaces of `F_q^n` in canonical form, their duals, the subspace metric
//! and the LCD tests.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::MatrixFq;

/// A subspace of `F_q^n`, stored as its RREF basis with zero rows removed.
/// Two subspaces are equal exactly when their bases are identical.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    basis: MatrixFq,
}

/// Outcome of the self-LCD test on one subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcdCheck {
    pub lcd: bool,
    /// `det(G G^T)` for the canonical basis `G` (1 for the zero subspace).
    pub gram_det: u32,
    /// `dim(U ∩ U^⊥)` from the intersection route.
    pub hull_dim: usize,
}

/// Outcome of the pairwise LCD test on `(U, W)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLcd {
    pub lcd: bool,
    /// `dim(U ∩ W^⊥)`.
    pub u_meets_dual_w: usize,
    /// `dim(W ∩ U^⊥)`.
    pub w_meets_dual_u: usize,
    /// For equal dimensions: whether `G_W G_U^T` is nonsingular.
    pub gram_nonsingular: Option<bool>,
}

impl Subspace {
    /// Row space of `m` in canonical form.
    pub fn row_space(m: &MatrixFq) -> Subspace {
        let r = m.rref();
        Subspace { n: m.cols(), basis: r.matrix.top_rows(r.rank()) }
    }

    pub fn span(field: &FieldSpec, n: usize, vectors: &[Vec<u32>]) -> Result<Subspace> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("vector of length {} in F_q^{n}", bad.len())));
        }
        Ok(Self::row_space(&MatrixFq::from_rows(field, n, vectors)?))
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Subspace {
        Subspace { n, basis: MatrixFq::zeros(field, 0, n) }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Subspace {
        Subspace { n, basis: MatrixFq::identity(field, n) }
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if !self.field().same(other.field()) {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// `U ∩ W = (U^⊥ + W^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Euclidean orthogonal complement.
    pub fn dual(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.n);
        }
        Subspace { n: self.n, basis: self.basis.kernel() }
    }

    /// `d_s(U, W) = dim(U + W) - dim(U ∩ W)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let sum = self.sum(other)?.dim();
        let meet = self.intersect(other)?.dim();
        Ok(sum - meet)
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!("vector of length {} in F_q^{}", v.len(), self.n)));
        }
        if self.dim() == 0 {
            return Ok(v.iter().all(|&x| x == 0));
        }
        Ok(self.basis.transpose().solve(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// LCD test by `det(G G^T)`, cross-checked against `dim(U ∩ U^⊥)`.
    pub fn is_lcd(&self) -> Result<LcdCheck> {
        let gram_det = if self.dim() == 0 {
            1
        } else {
            self.basis.mul(&self.basis.transpose())?.det()?
        };
        let hull_dim = self.intersect(&self.dual())?.dim();
        let lcd = gram_det != 0;
        if lcd != (hull_dim == 0) {
            return Err(Error::InternalInconsistency(format!(
                "det(GG^T) = {gram_det} but dim(U ∩ U^⊥) = {hull_dim}"
            )));
        }
        Ok(LcdCheck { lcd, gram_det, hull_dim })
    }

    /// Tests `U ∩ W^⊥ = {0}` and `W ∩ U^⊥ = {0}` by intersection.
    pub fn pairwise_lcd(&self, other: &Subspace) -> Result<PairLcd> {
        self.same_ambient(other)?;
        let u_meets_dual_w = self.intersect(&other.dual())?.dim();
        let w_meets_dual_u = other.intersect(&self.dual())?.dim();
        let gram_nonsingular = if self.dim() == other.dim() {
            let det = if self.dim() == 0 { 1 } else { other.basis.mul(&self.basis.transpose())?.det()? };
            Some(det != 0)
        } else {
            None
        };
        Ok(PairLcd { lcd: u_meets_dual_w == 0 && w_meets_dual_u == 0, u_meets_dual_w, w_meets_dual_u, gram_nonsingular })
    }

    /// The `n x n` matrix `P` with `v P = π_{U^⊥}(v)` for the decomposition
    /// `F_q^n = U ⊕ U^⊥`.
    pub fn projector_complement(&self) -> Result<MatrixFq> {
        let field = self.field().clone();
        let n = self.n;
        if self.dim() == 0 {
            return Ok(MatrixFq::identity(&field, n));
        }
        let dual = self.dual();
        let stacked = self.basis.vstack(&dual.basis)?;
        let inv = stacked.inverse()?;
        let Some(inv) = inv.filter(|_| stacked.rows() == n) else {
            let hull = self.intersect(&dual)?.dim();
            return Err(Error::NotLcd(hull.max(1)));
        };
        // v = a S with S = [G; W]; keep the W-coordinates: P = S^{-1} D S.
        let k = self.dim();
        let mut keep = MatrixFq::zeros(&field, n, n);
        for i in k..n {
            keep.set(i, i, 1);
        }
        inv.mul(&keep)?.mul(&stacked)
    }

    /// Canonical byte key used for ordering and hashing.
    fn key(&self) -> (usize, usize, &[u32]) {
        (self.n, self.dim(), self.basis.data())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field().same(other.field()) && self.key() == other.key()
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(n, dim, basis entries)`.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}
