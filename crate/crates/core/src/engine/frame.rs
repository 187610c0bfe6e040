//! Peirce frames: the three Peirce projections of a tripotent and
//! orthonormal bases of the corresponding subspaces.

use crate::engine::ops::{l_matrix, q_matrix, require_tripotent};
use crate::linalg::{conj_mat, eye, fro_norm, rel_mat_resid};
use crate::space::Element;
use crate::subspace::Subspace;
use crate::{error::Error, CMat, Tolerance};

/// The Peirce data of a tripotent `u`:
/// projectors `P2 = 2L² − L`, `P1 = 4(L − L²)`, `P0 = I − 3L + 2L²`
/// (polynomials in `L = L(u,u)`), cross-validated against `Q(u)²`, plus
/// orthonormal bases of the ranges.
pub struct PeirceFrame {
    tripotent: Element,
    /// projectors indexed by Peirce exponent: `[P0, P1, P2]`
    projectors: [CMat; 3],
    /// subspaces indexed by Peirce exponent: `[E0, E1, E2]`
    subspaces: [Subspace; 3],
    /// worst residual among the frame identities
    identity_residual: f64,
}

impl PeirceFrame {
    pub fn tripotent(&self) -> &Element {
        &self.tripotent
    }

    /// Projector onto the Peirce-`j` subspace (`j ∈ {0,1,2}`).
    pub fn projector(&self, j: usize) -> &CMat {
        &self.projectors[j]
    }

    /// The Peirce-`j` subspace.
    pub fn subspace(&self, j: usize) -> &Subspace {
        &self.subspaces[j]
    }

    /// `(dim E2, dim E1, dim E0)` — the customary presentation order.
    pub fn ranks(&self) -> (usize, usize, usize) {
        (
            self.subspaces[2].rank(),
            self.subspaces[1].rank(),
            self.subspaces[0].rank(),
        )
    }

    /// Worst residual among partition of unity, mutual annihilation,
    /// idempotence and the `P2 = Q(u)²` cross-check.
    pub fn identity_residual(&self) -> f64 {
        self.identity_residual
    }

    /// Applies `P_j` to an element of the same space.
    pub fn project(&self, j: usize, x: &Element) -> Element {
        Element::new(x.space().clone(), &self.projectors[j] * x.coords())
    }

    /// Residual of `x` under `P_j x = x` (at unit scale); zero means `x`
    /// lies in the Peirce-`j` subspace.
    pub fn membership_residual(&self, j: usize, x: &Element) -> f64 {
        crate::linalg::rel_vec_resid(&(&self.projectors[j] * x.coords()), x.coords())
    }
}

/// Computes the Peirce frame of a tripotent.
///
/// Subspace bases are extracted from the ranges of the projector matrices;
/// rank decisions use `tol.rank_tol`. Fails with [`Error::NotTripotent`]
/// when `u` is not a tripotent.
pub fn peirce_frame(u: &Element, tol: &Tolerance) -> Result<PeirceFrame, Error> {
    require_tripotent(u, tol)?;
    frame_unchecked(u, tol)
}

pub(crate) fn frame_unchecked(u: &Element, tol: &Tolerance) -> Result<PeirceFrame, Error> {
    let space = u.space();
    let n = space.dim();
    let l = l_matrix(space, u.coords(), u.coords());
    let l2 = &l * &l;
    let p2 = l2.scale(2.0) - &l;
    let p1 = (&l - &l2).scale(4.0);
    let p0 = eye(n) - l.scale(3.0) + l2.scale(2.0);

    // Cross-check: P2 computed through the conjugate-linear square.
    let q = q_matrix(space, u.coords());
    let p2_via_q = &q * conj_mat(&q);
    let mut worst = rel_mat_resid(&p2, &p2_via_q);

    // Partition of unity and mutual annihilation.
    let sum = &p0 + &p1 + &p2;
    worst = worst.max(rel_mat_resid(&sum, &eye(n)));
    let ps = [&p0, &p1, &p2];
    for (i, pi) in ps.iter().enumerate() {
        for (j, pj) in ps.iter().enumerate() {
            let prod = *pi * *pj;
            if i == j {
                worst = worst.max(rel_mat_resid(&prod, pi));
            } else {
                worst = worst.max(fro_norm(&prod) / (n as f64).sqrt().max(1.0));
            }
        }
    }

    let subspaces = [
        Subspace::from_span(&p0, tol),
        Subspace::from_span(&p1, tol),
        Subspace::from_span(&p2, tol),
    ];
    let rank_sum: usize = subspaces.iter().map(|s| s.rank()).sum();
    if rank_sum != n {
        return Err(Error::NotTripotent {
            residual: worst.max(1.0),
        });
    }

    Ok(PeirceFrame {
        tripotent: u.clone(),
        projectors: [p0, p1, p2],
        subspaces,
        identity_residual: worst,
    })
}
