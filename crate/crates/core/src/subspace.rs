//! Subspaces of a coordinate space, stored with orthonormal bases.
//!
//! Storing orthonormal bases makes inclusion tests pure projector-norm
//! computations and keeps all rank decisions inside [`crate::linalg`].

use crate::linalg::{eye, null_basis, op_norm, range_basis, svd};
use crate::{error::Error, CMat, Tolerance};

/// A linear subspace of `ℂ^ambient_dim`, held as a matrix whose columns are
/// an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMat,
}

impl Subspace {
    /// Subspace spanned by the columns of `m`; the basis is re-orthonormalized
    /// on construction and the rank is decided by `tol.rank_tol`.
    pub fn from_span(m: &CMat, tol: &Tolerance) -> Subspace {
        Subspace {
            ambient_dim: m.nrows(),
            basis: range_basis(m, tol),
        }
    }

    /// The zero subspace.
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: CMat::zeros(ambient_dim, 0),
        }
    }

    /// The whole coordinate space.
    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: eye(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the subspace.
    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// The stored orthonormal basis (columns).
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    /// Orthogonal projector `basis · basis*`.
    pub fn projector(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }

    /// Inclusion residual `‖(I − Π_other) Π_self‖`; zero iff `self ⊆ other`.
    pub fn inclusion_residual(&self, other: &Subspace) -> Result<f64, Error> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.rank() == 0 {
            return Ok(0.0);
        }
        let m = (eye(n) - other.projector()) * self.projector();
        Ok(op_norm(&m))
    }

    /// `self ⊆ other` up to `tol.eq_tol`.
    pub fn leq(&self, other: &Subspace, tol: &Tolerance) -> Result<bool, Error> {
        Ok(self.inclusion_residual(other)? <= tol.eq_tol)
    }

    /// Equality of subspaces (mutual inclusion).
    pub fn same(&self, other: &Subspace, tol: &Tolerance) -> Result<bool, Error> {
        Ok(self.leq(other, tol)? && other.leq(self, tol)?)
    }

    /// Orthonormal basis of `self + other`.
    pub fn sum(&self, other: &Subspace, tol: &Tolerance) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let mut cols = CMat::zeros(self.ambient_dim, self.rank() + other.rank());
        for j in 0..self.rank() {
            cols.set_column(j, &self.basis.column(j));
        }
        for j in 0..other.rank() {
            cols.set_column(self.rank() + j, &other.basis.column(j));
        }
        Ok(Subspace::from_span(&cols, tol))
    }

    /// Orthonormal basis of `self ∩ other`, via the null space of the
    /// stacked complementary projectors.
    pub fn intersection(&self, other: &Subspace, tol: &Tolerance) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let top = eye(n) - self.projector();
        let bottom = eye(n) - other.projector();
        let mut stacked = CMat::zeros(2 * n, n);
        stacked.view_mut((0, 0), (n, n)).copy_from(&top);
        stacked.view_mut((n, 0), (n, n)).copy_from(&bottom);
        let kernel = null_basis(&stacked, tol);
        Ok(Subspace {
            ambient_dim: n,
            basis: kernel,
        })
    }

    /// Orthogonal complement.
    pub fn complement(&self, tol: &Tolerance) -> Subspace {
        let n = self.ambient_dim;
        let m = eye(n) - self.projector();
        Subspace {
            ambient_dim: n,
            basis: range_basis(&m, tol),
        }
    }

    /// Orthonormality defect of the stored basis.
    pub fn orthonormality_residual(&self) -> f64 {
        if self.rank() == 0 {
            return 0.0;
        }
        let g = self.basis.adjoint() * &self.basis;
        crate::linalg::fro_norm(&(g - eye(self.rank())))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                lhs: self.ambient_dim,
                rhs: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// Principal-angle style distance used by a few diagnostics: largest
/// singular value of `Π_a − Π_b`.
pub fn projector_distance(a: &Subspace, b: &Subspace) -> f64 {
    op_norm(&(a.projector() - b.projector()))
}

/// Orthonormal basis of the column space of an explicit list of vectors.
pub fn span_of_columns(ambient: usize, cols: &[crate::CVec], tol: &Tolerance) -> Subspace {
    let mut m = CMat::zeros(ambient, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    Subspace::from_span(&m, tol)
}

// Keep svd referenced for doc purposes; range extraction lives in linalg.
#[allow(unused_imports)]
use svd as _svd_for_rank_decisions;
