//! Matrix Cartan factors: rectangular `B(H,K)`, symmetric `B(H)_s` and
//! antisymmetric `B(H)_a` at finite dimension, all carrying the triple
//! product `{a,b,c} = (a b* c + c b* a)/2`.
//!
//! Transpose and conjugation are always taken with respect to the canonical
//! basis; non-canonical conjugations are deliberately out of scope.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::factors::isometry::symmetric_construct_tripotent_mat;
use crate::linalg::{cr, czero, op_norm, random_cmat, random_unitary, svd};
use crate::space::{TripleSpace, TripotentRequest};
use crate::{error::Error, CMat, CVec, Tolerance};

/// Which matrix factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Rectangular,
    Symmetric,
    Antisymmetric,
}

/// A matrix Cartan factor in explicit coordinates.
///
/// Coordinate layouts:
/// * rectangular `m×n`: row-major entries, dimension `m·n`;
/// * symmetric `n×n`: the `n` diagonal entries followed by the strict upper
///   triangle in row-major order, dimension `n(n+1)/2` (coordinate `c`
///   contributes `c·(E_ij + E_ji)`);
/// * antisymmetric `n×n`: the strict upper triangle in row-major order,
///   dimension `n(n−1)/2` (coordinate `c` contributes `c·(E_ij − E_ji)`).
#[derive(Debug, Clone)]
pub struct MatrixFactor {
    kind: MatrixKind,
    rows: usize,
    cols: usize,
}

impl MatrixFactor {
    pub fn rectangular(m: usize, n: usize) -> Result<MatrixFactor, Error> {
        if m == 0 || n == 0 {
            return Err(Error::BadSize("rectangular factor needs m,n ≥ 1".into()));
        }
        Ok(MatrixFactor {
            kind: MatrixKind::Rectangular,
            rows: m,
            cols: n,
        })
    }

    pub fn symmetric(n: usize) -> Result<MatrixFactor, Error> {
        if n == 0 {
            return Err(Error::BadSize("symmetric factor needs n ≥ 1".into()));
        }
        Ok(MatrixFactor {
            kind: MatrixKind::Symmetric,
            rows: n,
            cols: n,
        })
    }

    pub fn antisymmetric(n: usize) -> Result<MatrixFactor, Error> {
        if n < 2 {
            return Err(Error::BadSize("antisymmetric factor needs n ≥ 2".into()));
        }
        Ok(MatrixFactor {
            kind: MatrixKind::Antisymmetric,
            rows: n,
            cols: n,
        })
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Ambient matrix sizes `(rows, cols)`.
    pub fn sizes(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Coordinates → ambient matrix.
    pub fn embed(&self, x: &CVec) -> CMat {
        let (m, n) = (self.rows, self.cols);
        match self.kind {
            MatrixKind::Rectangular => {
                let mut out = CMat::zeros(m, n);
                for i in 0..m {
                    for j in 0..n {
                        out[(i, j)] = x[i * n + j];
                    }
                }
                out
            }
            MatrixKind::Symmetric => {
                let mut out = CMat::zeros(n, n);
                for i in 0..n {
                    out[(i, i)] = x[i];
                }
                let mut k = n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        out[(i, j)] = x[k];
                        out[(j, i)] = x[k];
                        k += 1;
                    }
                }
                out
            }
            MatrixKind::Antisymmetric => {
                let mut out = CMat::zeros(n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        out[(i, j)] = x[k];
                        out[(j, i)] = -x[k];
                        k += 1;
                    }
                }
                out
            }
        }
    }

    /// Ambient matrix → coordinates (the matrix must lie in the factor).
    pub fn extract(&self, mat: &CMat) -> CVec {
        let (m, n) = (self.rows, self.cols);
        match self.kind {
            MatrixKind::Rectangular => {
                let mut out = CVec::zeros(m * n);
                for i in 0..m {
                    for j in 0..n {
                        out[i * n + j] = mat[(i, j)];
                    }
                }
                out
            }
            MatrixKind::Symmetric => {
                let mut out = CVec::zeros(self.dim());
                for i in 0..n {
                    out[i] = mat[(i, i)];
                }
                let mut k = n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        out[k] = (mat[(i, j)] + mat[(j, i)]).scale(0.5);
                        k += 1;
                    }
                }
                out
            }
            MatrixKind::Antisymmetric => {
                let mut out = CVec::zeros(self.dim());
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        out[k] = (mat[(i, j)] - mat[(j, i)]).scale(0.5);
                        k += 1;
                    }
                }
                out
            }
        }
    }

    /// Membership defect of an ambient matrix in this factor.
    pub fn membership_residual(&self, mat: &CMat) -> f64 {
        let t = mat.transpose();
        match self.kind {
            MatrixKind::Rectangular => 0.0,
            MatrixKind::Symmetric => crate::linalg::rel_mat_resid(&t, mat),
            MatrixKind::Antisymmetric => crate::linalg::rel_mat_resid(&t, &(-mat)),
        }
    }

    /// A random tripotent with prescribed partial-isometry rank. For the
    /// antisymmetric factor the initial projection gets rank `2·rank`.
    pub fn random_tripotent_mat(
        &self,
        rank: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<CMat, Error> {
        let (m, n) = (self.rows, self.cols);
        let infeasible = || Error::InfeasibleRank {
            rank,
            factor: self.label_str(),
        };
        match self.kind {
            MatrixKind::Rectangular => {
                if rank == 0 || rank > m.min(n) {
                    return Err(infeasible());
                }
                let g = random_cmat(m, n, rng);
                let (u, _, v) = svd(&g);
                Ok(u.columns(0, rank) * v.columns(0, rank).adjoint())
            }
            MatrixKind::Symmetric => {
                if rank == 0 || rank > n {
                    return Err(infeasible());
                }
                let p = crate::linalg::random_projection(n, rank, rng);
                symmetric_construct_tripotent_mat(&p, &Tolerance::default())
            }
            MatrixKind::Antisymmetric => {
                if rank == 0 || 2 * rank > n {
                    return Err(infeasible());
                }
                // Pair up 2·rank orthonormal vectors: v maps the first batch
                // onto conjugates of the second, and u = v − vᵗ is a
                // tripotent with initial projection of rank 2·rank.
                let q = random_unitary(n, rng);
                let mut v = CMat::zeros(n, n);
                for k in 0..rank {
                    let f = q.column(k).into_owned();
                    let b = q.column(rank + k).into_owned();
                    let g = b.map(|z| z.conj());
                    v += g * f.adjoint();
                }
                Ok(&v - v.transpose())
            }
        }
    }

    fn label_str(&self) -> String {
        match self.kind {
            MatrixKind::Rectangular => format!("rect:{}x{}", self.rows, self.cols),
            MatrixKind::Symmetric => format!("sym:{}", self.rows),
            MatrixKind::Antisymmetric => format!("antisym:{}", self.rows),
        }
    }

    /// Feasible partial-isometry ranks.
    pub fn feasible_ranks(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            MatrixKind::Rectangular | MatrixKind::Symmetric => 1..=self.rows.min(self.cols),
            MatrixKind::Antisymmetric => 1..=(self.rows / 2),
        }
    }
}

impl TripleSpace for MatrixFactor {
    fn dim(&self) -> usize {
        match self.kind {
            MatrixKind::Rectangular => self.rows * self.cols,
            MatrixKind::Symmetric => self.rows * (self.rows + 1) / 2,
            MatrixKind::Antisymmetric => self.rows * (self.rows - 1) / 2,
        }
    }

    fn label(&self) -> String {
        self.label_str()
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        let (a, b, c) = (self.embed(x), self.embed(y), self.embed(z));
        let bs = b.adjoint();
        let t = (&a * &bs * &c + &c * &bs * &a).scale(0.5);
        self.extract(&t)
    }

    fn norm(&self, x: &CVec) -> Option<f64> {
        Some(op_norm(&self.embed(x)))
    }

    fn make_tripotent(
        &self,
        req: TripotentRequest,
        rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        let (m, n) = (self.rows, self.cols);
        let mat = match req {
            TripotentRequest::Rank(r) => self.random_tripotent_mat(r, rng)?,
            TripotentRequest::Minimal => self.random_tripotent_mat(1, rng)?,
            TripotentRequest::Any => {
                // uniform-ish coverage of the feasible ranks
                let ranks = self.feasible_ranks();
                let r = rng.gen_range(*ranks.start()..=*ranks.end());
                self.random_tripotent_mat(r, rng)?
            }
            TripotentRequest::Complete => match self.kind {
                MatrixKind::Rectangular | MatrixKind::Symmetric => {
                    self.random_tripotent_mat(m.min(n), rng)?
                }
                MatrixKind::Antisymmetric => self.random_tripotent_mat(n / 2, rng)?,
            },
            TripotentRequest::Unitary => match self.kind {
                MatrixKind::Rectangular => {
                    if m != n {
                        return Err(Error::InfeasibleRank {
                            rank: m.min(n),
                            factor: self.label_str(),
                        });
                    }
                    self.random_tripotent_mat(n, rng)?
                }
                MatrixKind::Symmetric => self.random_tripotent_mat(n, rng)?,
                MatrixKind::Antisymmetric => {
                    if n % 2 != 0 {
                        return Err(Error::InfeasibleRank {
                            rank: n / 2,
                            factor: self.label_str(),
                        });
                    }
                    self.random_tripotent_mat(n / 2, rng)?
                }
            },
        };
        Ok(self.extract(&mat))
    }
}

/// Matrix units `E_ij` as factor coordinates (rectangular factors only).
pub fn matrix_unit(factor: &MatrixFactor, i: usize, j: usize) -> CVec {
    assert_eq!(factor.kind(), MatrixKind::Rectangular);
    let (m, n) = factor.sizes();
    assert!(i < m && j < n);
    let mut e = CMat::zeros(m, n);
    e[(i, j)] = cr(1.0);
    factor.extract(&e)
}

/// The identity of a square rectangular factor, as coordinates.
pub fn identity_element(factor: &MatrixFactor) -> CVec {
    let (m, n) = factor.sizes();
    assert_eq!(m, n);
    let mut out = CMat::zeros(m, n);
    for i in 0..m {
        out[(i, i)] = cr(1.0);
    }
    let _ = czero();
    factor.extract(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Element, SpaceRef};
    use rand::SeedableRng;
    use std::sync::Arc;

    fn space(f: MatrixFactor) -> SpaceRef {
        Arc::new(f)
    }

    #[test]
    fn factor_dimensions() {
        assert_eq!(MatrixFactor::rectangular(1, 2).unwrap().dim(), 2);
        assert_eq!(MatrixFactor::antisymmetric(3).unwrap().dim(), 3);
        assert_eq!(MatrixFactor::symmetric(3).unwrap().dim(), 6);
        assert!(MatrixFactor::antisymmetric(1).is_err());
        assert!(MatrixFactor::rectangular(0, 2).is_err());
    }

    #[test]
    fn embed_extract_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in [
            MatrixFactor::rectangular(2, 3).unwrap(),
            MatrixFactor::symmetric(3).unwrap(),
            MatrixFactor::antisymmetric(4).unwrap(),
        ] {
            let x = crate::linalg::random_cvec(f.dim(), &mut rng);
            let back = f.extract(&f.embed(&x));
            assert!(crate::linalg::rel_vec_resid(&back, &x) < 1e-14);
            assert!(f.membership_residual(&f.embed(&x)) < 1e-14);
        }
    }

    #[test]
    fn triple_closes_on_symmetric_and_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [
            MatrixFactor::symmetric(4).unwrap(),
            MatrixFactor::antisymmetric(4).unwrap(),
        ] {
            let s = space(f.clone());
            let x = Element::random(s.clone(), &mut rng);
            let y = Element::random(s.clone(), &mut rng);
            let z = Element::random(s.clone(), &mut rng);
            let t = x.triple(&y, &z).unwrap();
            // closure: embedding the result reproduces the ambient product
            let a = f.embed(x.coords());
            let b = f.embed(y.coords());
            let c = f.embed(z.coords());
            let amb = (&a * b.adjoint() * &c + &c * b.adjoint() * &a).scale(0.5);
            assert!(f.membership_residual(&amb) < 1e-12);
            assert!(crate::linalg::rel_mat_resid(&f.embed(t.coords()), &amb) < 1e-12);
        }
    }

    #[test]
    fn random_tripotents_have_requested_rank() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = MatrixFactor::rectangular(3, 4).unwrap();
        for r in 1..=3 {
            let u = f.random_tripotent_mat(r, &mut rng).unwrap();
            let pi = u.adjoint() * &u;
            assert_eq!(crate::linalg::rank(&pi, &tol), r);
            // cubic equation
            let cube = (&u * u.adjoint() * &u + &u * u.adjoint() * &u).scale(0.5);
            assert!(crate::linalg::rel_mat_resid(&cube, &u) < 1e-12);
        }
        let fa = MatrixFactor::antisymmetric(5).unwrap();
        for r in 1..=2 {
            let u = fa.random_tripotent_mat(r, &mut rng).unwrap();
            let pi = u.adjoint() * &u;
            assert_eq!(crate::linalg::rank(&pi, &tol), 2 * r, "even rank 2r");
            assert!(fa.membership_residual(&u) < 1e-12);
        }
        let fs = MatrixFactor::symmetric(4).unwrap();
        for r in 1..=4 {
            let u = fs.random_tripotent_mat(r, &mut rng).unwrap();
            assert!(fs.membership_residual(&u) < 1e-11);
            let pi = u.adjoint() * &u;
            assert_eq!(crate::linalg::rank(&pi, &tol), r);
        }
    }

    #[test]
    fn infeasible_ranks_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fa = MatrixFactor::antisymmetric(3).unwrap();
        assert!(matches!(
            fa.random_tripotent_mat(2, &mut rng),
            Err(Error::InfeasibleRank { .. })
        ));
        let f = MatrixFactor::rectangular(2, 2).unwrap();
        assert!(f.random_tripotent_mat(3, &mut rng).is_err());
    }
}
