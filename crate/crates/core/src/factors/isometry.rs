//! Partial isometries in matrix factors: initial/final projections,
//! the projection-order characterizations of `≤₂` and `≤`, rank
//! equivalence of projections, and the tripotent constructors of the
//! symmetric and antisymmetric factors.

use crate::linalg::{
    eye, fro_norm, hermitian_eig, projection_residual, rank, rel_mat_resid,
};
use crate::tol::unit_scale;
use crate::{error::Error, CMat, Tolerance};

/// A partial isometry `u` with its initial projection `p_i = u*u` and final
/// projection `p_f = u u*`.
#[derive(Debug, Clone)]
pub struct PartialIsometry {
    u: CMat,
    p_i: CMat,
    p_f: CMat,
}

impl PartialIsometry {
    /// Wraps a matrix, verifying `u = p_f · u · p_i` and that both
    /// projections are hermitian idempotents.
    pub fn new(u: CMat, tol: &Tolerance) -> Result<PartialIsometry, Error> {
        let p_i = u.adjoint() * &u;
        let p_f = &u * u.adjoint();
        let r_i = projection_residual(&p_i);
        let r_f = projection_residual(&p_f);
        let recon = rel_mat_resid(&(&p_f * &u * &p_i), &u);
        let worst = r_i.max(r_f).max(recon);
        if worst > tol.eq_tol {
            return Err(Error::NotTripotent { residual: worst });
        }
        Ok(PartialIsometry { u, p_i, p_f })
    }

    pub fn matrix(&self) -> &CMat {
        &self.u
    }

    pub fn initial_projection(&self) -> &CMat {
        &self.p_i
    }

    pub fn final_projection(&self) -> &CMat {
        &self.p_f
    }

    pub fn initial_rank(&self, tol: &Tolerance) -> usize {
        rank(&self.p_i, tol)
    }
}

/// Projection order `p ≤ q`, decided as `‖p − q·p‖ ≤ eq_tol` (equivalent to
/// `qp = p` for hermitian idempotents).
pub fn projection_leq(p: &CMat, q: &CMat, tol: &Tolerance) -> bool {
    let d = p - q * p;
    fro_norm(&d) / unit_scale(fro_norm(p), 0.0) <= tol.eq_tol
}

/// `u ≤₂ v` through initial and final projections:
/// `p_i(u) ≤ p_i(v)` and `p_f(u) ≤ p_f(v)`.
pub fn vn_leq2(u: &PartialIsometry, v: &PartialIsometry, tol: &Tolerance) -> bool {
    projection_leq(&u.p_i, &v.p_i, tol) && projection_leq(&u.p_f, &v.p_f, tol)
}

/// `u ≤ e` through witnesses: projections `p ≤ p_f(e)`, `q ≤ p_i(e)` with
/// `u = p·e = e·q`. When the relation holds the canonical witnesses
/// `p = u u*`, `q = u*u` are returned.
pub fn vn_order(
    u: &PartialIsometry,
    e: &PartialIsometry,
    tol: &Tolerance,
) -> (bool, Option<(CMat, CMat)>) {
    let p = &u.p_f;
    let q = &u.p_i;
    let dominated = projection_leq(p, &e.p_f, tol) && projection_leq(q, &e.p_i, tol);
    if !dominated {
        return (false, None);
    }
    let left = rel_mat_resid(&(p * &e.u), &u.u);
    let right = rel_mat_resid(&(&e.u * q), &u.u);
    if left <= tol.eq_tol && right <= tol.eq_tol {
        (true, Some((p.clone(), q.clone())))
    } else {
        (false, None)
    }
}

/// Murray-von Neumann equivalence of projections in a matrix algebra:
/// rank equality. When equivalent, a witnessing partial isometry mapping
/// `ran(p)` onto `ran(q)` is constructed from spectral bases and returned.
pub fn mvn_equivalent(
    p: &CMat,
    q: &CMat,
    tol: &Tolerance,
) -> Result<(bool, Option<CMat>), Error> {
    for m in [p, q] {
        let r = projection_residual(m);
        if r > tol.eq_tol {
            return Err(Error::NotProjection { residual: r });
        }
    }
    let rp = rank(p, tol);
    let rq = rank(q, tol);
    if rp != rq {
        return Ok((false, None));
    }
    let fp = range_of_projection(p, tol)?;
    let fq = range_of_projection(q, tol)?;
    // u maps the i-th basis vector of ran(p) to the i-th of ran(q)
    let u = &fq * fp.adjoint();
    Ok((true, Some(u)))
}

/// Orthonormal basis of the range of a projection via its hermitian
/// eigendecomposition (eigenvalue ≈ 1 eigenvectors).
pub fn range_of_projection(p: &CMat, tol: &Tolerance) -> Result<CMat, Error> {
    let (vals, vecs) = hermitian_eig(p, tol)?;
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.5).collect();
    let mut out = CMat::zeros(p.nrows(), keep.len());
    for (col, &i) in keep.iter().enumerate() {
        out.set_column(col, &vecs.column(i));
    }
    Ok(out)
}

/// The `≤₀` dichotomy in the antisymmetric factor: `u ≤₀ v` iff either
/// `1 − p_i(v)` has rank at most one, or `p_i(u) ≤ p_i(v)`.
pub fn antisym_le0(u: &PartialIsometry, v: &PartialIsometry, tol: &Tolerance) -> bool {
    let n = v.p_i.nrows();
    let complement_rank = rank(&(eye(n) - &v.p_i), tol);
    complement_rank <= 1 || projection_leq(&u.p_i, &v.p_i, tol)
}

/// A symmetric tripotent with prescribed initial projection `p`: maps an
/// orthonormal basis of `ran(p)` onto its conjugate, giving `u = uᵗ`,
/// `u*u = p`, `u u* = pᵗ`.
pub fn symmetric_construct_tripotent_mat(p: &CMat, tol: &Tolerance) -> Result<CMat, Error> {
    let r = projection_residual(p);
    if r > tol.eq_tol {
        return Err(Error::NotProjection { residual: r });
    }
    let basis = range_of_projection(p, tol)?;
    let n = p.nrows();
    let mut u = CMat::zeros(n, n);
    for k in 0..basis.ncols() {
        let f = basis.column(k).into_owned();
        let g = f.map(|z| z.conj());
        u += &g * f.adjoint();
    }
    Ok(u)
}

/// Symmetric-factor front-end of [`symmetric_construct_tripotent_mat`]
/// returning factor coordinates.
pub fn symmetric_construct_tripotent(
    factor: &crate::factors::MatrixFactor,
    p: &CMat,
    tol: &Tolerance,
) -> Result<crate::CVec, Error> {
    let u = symmetric_construct_tripotent_mat(p, tol)?;
    debug_assert!(factor.membership_residual(&u) < 1e-9);
    Ok(factor.extract(&u))
}

/// The block-diagonal antisymmetric unitary of an even-dimensional factor:
/// 2×2 rotation blocks `[[0,1],[-1,0]]` down the diagonal.
pub fn antisym_unitary(n: usize) -> Result<CMat, Error> {
    if n % 2 != 0 {
        return Err(Error::InfeasibleRank {
            rank: n / 2,
            factor: format!("antisym:{n}"),
        });
    }
    let mut u = CMat::zeros(n, n);
    for k in 0..(n / 2) {
        u[(2 * k, 2 * k + 1)] = crate::linalg::cr(1.0);
        u[(2 * k + 1, 2 * k)] = crate::linalg::cr(-1.0);
    }
    Ok(u)
}
