//! The spin factor: a complex Hilbert space with the coordinatewise
//! conjugation, triple product
//! `{x,y,z} = ⟨x,y⟩z + ⟨z,y⟩x − ⟨x,z̄⟩ȳ`
//! and norm `‖x‖² = ⟨x,x⟩ + sqrt(⟨x,x⟩² − |⟨x,x̄⟩|²)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{conj_vec, cr, random_phase, vec_norm};
use crate::space::{TripleSpace, TripotentRequest};
use crate::{error::Error, CVec, Tolerance, C};

/// Spin factor of dimension `n ≥ 1`.
#[derive(Debug, Clone)]
pub struct SpinFactor {
    n: usize,
}

impl SpinFactor {
    pub fn new(n: usize) -> Result<SpinFactor, Error> {
        if n == 0 {
            return Err(Error::BadSize("spin factor needs n ≥ 1".into()));
        }
        Ok(SpinFactor { n })
    }

    /// Sesquilinear inner product `⟨x, y⟩ = Σ x_k conj(y_k)`.
    pub fn ip(x: &CVec, y: &CVec) -> C {
        let mut acc = C::new(0.0, 0.0);
        for k in 0..x.len() {
            acc += x[k] * y[k].conj();
        }
        acc
    }

    /// The spin norm.
    pub fn spin_norm(x: &CVec) -> f64 {
        let xx = Self::ip(x, x).re;
        let xbar = Self::ip(x, &conj_vec(x));
        let inner = (xx * xx - xbar.norm_sqr()).max(0.0);
        (xx + inner.sqrt()).sqrt()
    }
}

/// Which of the two tripotent classes a spin element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinTripotentKind {
    /// `u = α z` with `z` real-coordinate of unit length, `α` a phase:
    /// a unitary tripotent.
    Unitary,
    /// `u ⊥₂ ū` with `‖u‖₂ = 1/√2`: a minimal tripotent.
    Minimal,
    /// not a tripotent (or zero)
    None,
}

/// Classifies a spin element as one of the two tripotent classes (or
/// neither). Uses the closed forms: `u` unitary iff `|⟨u,ū⟩| = ⟨u,u⟩ = 1`;
/// minimal iff `⟨u,ū⟩ = 0` and `⟨u,u⟩ = 1/2`.
pub fn classify_spin_tripotent(u: &CVec, tol: &Tolerance) -> SpinTripotentKind {
    let xx = SpinFactor::ip(u, u).re;
    let xbar = SpinFactor::ip(u, &conj_vec(u)).norm();
    if (xx - 1.0).abs() <= tol.eq_tol.sqrt() && (xbar - 1.0).abs() <= tol.eq_tol.sqrt() {
        SpinTripotentKind::Unitary
    } else if (xx - 0.5).abs() <= tol.eq_tol.sqrt() && xbar <= tol.eq_tol.sqrt() {
        SpinTripotentKind::Minimal
    } else {
        SpinTripotentKind::None
    }
}

impl TripleSpace for SpinFactor {
    fn dim(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        format!("spin:{}", self.n)
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        let xy = SpinFactor::ip(x, y);
        let zy = SpinFactor::ip(z, y);
        let xz = SpinFactor::ip(x, &conj_vec(z));
        let mut out = z.map(|c| c * xy);
        out += x.map(|c| c * zy);
        out -= conj_vec(y).map(|c| c * xz);
        out
    }

    fn norm(&self, x: &CVec) -> Option<f64> {
        Some(SpinFactor::spin_norm(x))
    }

    fn make_tripotent(
        &self,
        req: TripotentRequest,
        rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        let n = self.n;
        let unitary = |rng: &mut ChaCha8Rng| {
            let mut z = CVec::from_fn(n, |_, _| {
                cr(crate::linalg::random_complex(rng).re)
            });
            let norm = vec_norm(&z);
            z /= cr(norm);
            let alpha = random_phase(rng);
            z.map(|c| c * alpha)
        };
        let minimal = |rng: &mut ChaCha8Rng| -> Result<CVec, Error> {
            if n < 2 {
                return Err(Error::InfeasibleRank {
                    rank: 1,
                    factor: self.label(),
                });
            }
            // two random real orthonormal vectors a ⊥ b; w = (a + i b)/2
            let mut a = CVec::from_fn(n, |_, _| cr(crate::linalg::random_complex(rng).re));
            a /= cr(vec_norm(&a));
            let mut b = CVec::from_fn(n, |_, _| cr(crate::linalg::random_complex(rng).re));
            let overlap = SpinFactor::ip(&b, &a);
            b -= a.map(|c| c * overlap);
            b /= cr(vec_norm(&b));
            let i = C::new(0.0, 1.0);
            let w = (a + b.map(|c| c * i)).map(|c| c * cr(0.5));
            let alpha = random_phase(rng);
            Ok(w.map(|c| c * alpha))
        };
        match req {
            TripotentRequest::Unitary | TripotentRequest::Complete => Ok(unitary(rng)),
            TripotentRequest::Minimal => minimal(rng),
            TripotentRequest::Rank(1) if n >= 2 => minimal(rng),
            TripotentRequest::Rank(r) if r == n => Ok(unitary(rng)),
            TripotentRequest::Rank(r) => Err(Error::InfeasibleRank {
                rank: r,
                factor: self.label(),
            }),
            TripotentRequest::Any => {
                if n >= 2 && rng.gen_bool(0.5) {
                    minimal(rng)
                } else {
                    Ok(unitary(rng))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Element, SpaceRef};
    use rand::SeedableRng;
    use std::sync::Arc;

    #[test]
    fn two_dim_minimal_example() {
        // u = (1, i)/2: ⟨u,u⟩ = 1/2 and ⟨u,ū⟩ = 0, so {u,u,u} = u.
        let tol = Tolerance::default();
        let s: SpaceRef = Arc::new(SpinFactor::new(2).unwrap());
        let u = Element::new(
            s.clone(),
            CVec::from_vec(vec![C::new(0.5, 0.0), C::new(0.0, 0.5)]),
        );
        let cube = u.triple(&u, &u).unwrap();
        assert!(crate::linalg::rel_vec_resid(cube.coords(), u.coords()) < 1e-14);
        assert_eq!(
            classify_spin_tripotent(u.coords(), &tol),
            SpinTripotentKind::Minimal
        );
    }

    #[test]
    fn norm_bounds_against_hilbert_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = SpinFactor::new(5).unwrap();
        for _ in 0..50 {
            let x = crate::linalg::random_cvec(5, &mut rng);
            let h = vec_norm(&x);
            let sp = SpinFactor::spin_norm(&x);
            assert!(h <= sp + 1e-12);
            assert!(sp <= 2f64.sqrt() * h + 1e-12);
        }
        let _ = s;
    }

    #[test]
    fn constructors_produce_the_announced_kinds() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = SpinFactor::new(6).unwrap();
        let u = s
            .make_tripotent(TripotentRequest::Unitary, &mut rng)
            .unwrap();
        assert_eq!(classify_spin_tripotent(&u, &tol), SpinTripotentKind::Unitary);
        let m = s
            .make_tripotent(TripotentRequest::Minimal, &mut rng)
            .unwrap();
        assert_eq!(classify_spin_tripotent(&m, &tol), SpinTripotentKind::Minimal);
        assert!(s
            .make_tripotent(TripotentRequest::Rank(3), &mut rng)
            .is_err());
    }
}
