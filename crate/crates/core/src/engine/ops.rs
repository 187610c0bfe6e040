//! Multiplication operators and the tripotent predicate.

use crate::linalg::{cr, eigenvalue_cluster_residual, vec_norm};
use crate::space::{same_space, Element};
use crate::{error::Error, tol::unit_scale, CMat, CVec, Tolerance};

/// Matrix of the linear operator `x ↦ {a, b, x}` in the coordinate basis.
pub fn l_operator(a: &Element, b: &Element) -> Result<CMat, Error> {
    same_space(a, b)?;
    let space = a.space();
    Ok(l_matrix(space, a.coords(), b.coords()))
}

/// Coordinate-level version of [`l_operator`].
pub fn l_matrix(space: &crate::space::SpaceRef, a: &CVec, b: &CVec) -> CMat {
    let n = space.dim();
    let mut m = CMat::zeros(n, n);
    let mut basis = CVec::zeros(n);
    for k in 0..n {
        basis[k] = cr(1.0);
        let col = space.triple(a, b, &basis);
        m.set_column(k, &col);
        basis[k] = cr(0.0);
    }
    m
}

/// Matrix `Q` with `{u, x, u} = Q · conj(x)`: the conjugate-linear operator
/// `Q(u)` in coordinates. `Q(u)² x = Q · conj(Q) · x` is complex-linear.
pub fn q_operator(u: &Element) -> CMat {
    q_matrix(u.space(), u.coords())
}

/// Coordinate-level version of [`q_operator`].
pub fn q_matrix(space: &crate::space::SpaceRef, u: &CVec) -> CMat {
    let n = space.dim();
    let mut m = CMat::zeros(n, n);
    let mut basis = CVec::zeros(n);
    for k in 0..n {
        // {u, e_k, u} is conjugate-linear in the middle slot, so the column
        // for e_k already carries the right value: conj(e_k) = e_k.
        basis[k] = cr(1.0);
        let col = space.triple(u, &basis, u);
        m.set_column(k, &col);
        basis[k] = cr(0.0);
    }
    m
}

/// Outcome of the tripotent predicate.
#[derive(Debug, Clone)]
pub struct TripotentCheck {
    /// Raw coordinate norm of `{u,u,u} − u`.
    pub residual: f64,
    /// Worst distance of an eigenvalue of `L(u,u)` from `{0, 1/2, 1}`
    /// (only evaluated when the cubic residual already passes).
    pub eig_cluster_residual: f64,
    /// Verdict.
    pub is_tripotent: bool,
}

/// Checks `{u,u,u} = u` and, on success, additionally validates that the
/// spectrum of `L(u,u)` clusters at `{0, 1/2, 1}`.
///
/// The reported residual is the raw norm `‖{u,u,u} − u‖`; the verdict
/// compares it at unit scale.
pub fn is_tripotent(u: &Element, tol: &Tolerance) -> TripotentCheck {
    let cube = u.space().triple(u.coords(), u.coords(), u.coords());
    let residual = vec_norm(&(&cube - u.coords()));
    let scale = unit_scale(vec_norm(&cube), u.norm2());
    let cubic_ok = residual / scale <= tol.eq_tol;
    if !cubic_ok {
        return TripotentCheck {
            residual,
            eig_cluster_residual: f64::INFINITY,
            is_tripotent: false,
        };
    }
    let l = l_matrix(u.space(), u.coords(), u.coords());
    let eig_cluster_residual =
        eigenvalue_cluster_residual(&l, &[0.0, 0.5, 1.0]).unwrap_or(f64::INFINITY);
    TripotentCheck {
        residual,
        eig_cluster_residual,
        is_tripotent: eig_cluster_residual <= tol.eig_cluster_tol,
    }
}

/// Shorthand: error unless `u` is a tripotent.
pub fn require_tripotent(u: &Element, tol: &Tolerance) -> Result<(), Error> {
    let chk = is_tripotent(u, tol);
    if chk.is_tripotent {
        Ok(())
    } else {
        Err(Error::NotTripotent {
            residual: chk.residual,
        })
    }
}
