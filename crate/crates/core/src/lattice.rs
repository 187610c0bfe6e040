//! Projection lattices of matrix algebras: meet, join, orthocomplement,
//! the modular law at desk scale, orthomodularity, perspectivity and the
//! rank form of property (F).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{
    eye, projection_residual, random_projection, random_unitary, rank, rel_mat_resid,
};
use crate::subspace::Subspace;
use crate::{error::Error, CMat, Tolerance};

/// A projection (hermitian idempotent) in a matrix algebra.
#[derive(Debug, Clone)]
pub struct Projection {
    p: CMat,
}

impl Projection {
    pub fn new(p: CMat, tol: &Tolerance) -> Result<Projection, Error> {
        if p.nrows() != p.ncols() {
            return Err(Error::NotSquare {
                rows: p.nrows(),
                cols: p.ncols(),
            });
        }
        let r = projection_residual(&p);
        if r > tol.eq_tol {
            return Err(Error::NotProjection { residual: r });
        }
        Ok(Projection { p })
    }

    /// Projection onto the span of a subspace basis.
    pub fn from_subspace(s: &Subspace) -> Projection {
        Projection { p: s.projector() }
    }

    pub fn zero(n: usize) -> Projection {
        Projection {
            p: CMat::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Projection {
        Projection { p: eye(n) }
    }

    pub fn matrix(&self) -> &CMat {
        &self.p
    }

    pub fn ambient(&self) -> usize {
        self.p.nrows()
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        rank(&self.p, tol)
    }

    pub fn range(&self, tol: &Tolerance) -> Subspace {
        Subspace::from_span(&self.p, tol)
    }

    /// Orthocomplement `I − p`.
    pub fn complement(&self) -> Projection {
        Projection {
            p: eye(self.ambient()) - &self.p,
        }
    }

    /// `self ≤ other` as projections.
    pub fn leq(&self, other: &Projection, tol: &Tolerance) -> bool {
        crate::factors::isometry::projection_leq(&self.p, &other.p, tol)
    }

    /// Lattice join: projection onto `ran(p) + ran(q)`.
    pub fn join(&self, other: &Projection, tol: &Tolerance) -> Result<Projection, Error> {
        check_ambient(self, other)?;
        let s = self.range(tol).sum(&other.range(tol), tol)?;
        Ok(Projection::from_subspace(&s))
    }

    /// Lattice meet: projection onto `ran(p) ∩ ran(q)`.
    pub fn meet(&self, other: &Projection, tol: &Tolerance) -> Result<Projection, Error> {
        check_ambient(self, other)?;
        let s = self.range(tol).intersection(&other.range(tol), tol)?;
        Ok(Projection::from_subspace(&s))
    }

    /// A random subprojection of prescribed rank.
    pub fn random_subprojection(
        &self,
        r: usize,
        rng: &mut ChaCha8Rng,
        tol: &Tolerance,
    ) -> Projection {
        let range = self.range(tol);
        let k = range.rank();
        assert!(r <= k);
        // random unitary mix of the range basis, keep r columns
        let u = random_unitary(k, rng);
        let basis = range.basis() * u.columns(0, r);
        let sub = Subspace::from_span(&basis.into_owned(), tol);
        Projection::from_subspace(&sub)
    }
}

fn check_ambient(a: &Projection, b: &Projection) -> Result<(), Error> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch {
            lhs: a.ambient(),
            rhs: b.ambient(),
        });
    }
    Ok(())
}

/// Report of a modular-law sampling campaign.
#[derive(Debug, Clone)]
pub struct ModularReport {
    pub ambient: usize,
    pub trials: usize,
    pub max_residual: f64,
    pub failures: usize,
}

/// Samples the modular law `(e ∨ f) ∧ g = e ∨ (f ∧ g)` for random triples
/// with `e ≤ g` (`e` is drawn as a subprojection of `g`). In a matrix
/// algebra every trial must pass.
pub fn modular_law_sample(
    n: usize,
    trials: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<ModularReport, Error> {
    assert!(n >= 2);
    let mut max_residual = 0.0_f64;
    let mut failures = 0;
    for _ in 0..trials {
        let rg = rng.gen_range(0..=n);
        let g = if rg == 0 {
            Projection::zero(n)
        } else {
            Projection::new(random_projection(n, rg, rng), tol)?
        };
        let re = rng.gen_range(0..=rg);
        let e = if re == 0 {
            Projection::zero(n)
        } else {
            g.random_subprojection(re, rng, tol)
        };
        let rf = rng.gen_range(0..=n);
        let f = if rf == 0 {
            Projection::zero(n)
        } else {
            Projection::new(random_projection(n, rf, rng), tol)?
        };
        let lhs = e.join(&f, tol)?.meet(&g, tol)?;
        let rhs = e.join(&f.meet(&g, tol)?, tol)?;
        let resid = rel_mat_resid(lhs.matrix(), rhs.matrix());
        max_residual = max_residual.max(resid);
        if resid > 1e-8 {
            failures += 1;
        }
    }
    Ok(ModularReport {
        ambient: n,
        trials,
        max_residual,
        failures,
    })
}

/// Perspectivity: two projections of a matrix algebra are perspective iff
/// they share a common lattice complement, which happens exactly when their
/// ranks agree. On success a common complement `r` with
/// `p∧r = q∧r = 0`, `p∨r = q∨r = I` is constructed (a generic subspace of
/// the complementary dimension) and returned.
pub fn perspectivity_check(
    p: &Projection,
    q: &Projection,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<(bool, Option<Projection>), Error> {
    check_ambient(p, q)?;
    let n = p.ambient();
    let rp = p.rank(tol);
    let rq = q.rank(tol);
    if rp != rq {
        return Ok((false, None));
    }
    if rp == n || rp == 0 {
        // p = q = I (complement 0) or p = q = 0 (complement I)
        let r = if rp == n {
            Projection::zero(n)
        } else {
            Projection::identity(n)
        };
        return Ok((true, Some(r)));
    }
    // A generic (n - rp)-dimensional subspace is transversal to both ranges;
    // retry on the measure-zero degenerate draws.
    for _ in 0..32 {
        let r = Projection::new(random_projection(n, n - rp, rng), tol)?;
        let ok = r.meet(p, tol)?.rank(tol) == 0
            && r.meet(q, tol)?.rank(tol) == 0
            && r.join(p, tol)?.rank(tol) == n
            && r.join(q, tol)?.rank(tol) == n;
        if ok {
            return Ok((true, Some(r)));
        }
    }
    Err(Error::IterationStall)
}

/// Orthomodularity sample: for `p ⊥ q` and `r ≥ p`,
/// `r = p ∨ (r ∧ (p ∨ q)′ ∨ ...)` reduces to the identity
/// `r = p ∨ (r ∧ p′)`; returns the worst residual over the trials.
pub fn orthomodularity_sample(
    n: usize,
    trials: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<f64, Error> {
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let rr = rng.gen_range(1..=n);
        let r = Projection::new(random_projection(n, rr, rng), tol)?;
        let rp = rng.gen_range(0..=rr);
        let p = if rp == 0 {
            Projection::zero(n)
        } else {
            r.random_subprojection(rp, rng, tol)
        };
        let rebuilt = p.join(&r.meet(&p.complement(), tol)?, tol)?;
        worst = worst.max(rel_mat_resid(rebuilt.matrix(), r.matrix()));
    }
    Ok(worst)
}

/// Property (F) by rank: `q ≤ p` with `rank q = rank p` forces `q = p`.
/// Exact: decided entirely through integer ranks and the order check.
pub fn property_f_by_rank(p: &Projection, q: &Projection, tol: &Tolerance) -> bool {
    if !q.leq(p, tol) || q.rank(tol) != p.rank(tol) {
        return true; // hypothesis empty, property holds vacuously
    }
    rel_mat_resid(p.matrix(), q.matrix()) <= tol.eq_tol
}

/// Exact-mode verification of the modular law on coordinate projections
/// (diagonal 0/1 projections represented as bitmasks). Meet and join are
/// set operations, so every identity is checked bit-exactly.
pub fn modular_law_exact(n: usize, rng: &mut ChaCha8Rng, trials: usize) -> bool {
    assert!(n <= 64);
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for _ in 0..trials {
        let g: u64 = rng.gen::<u64>() & mask;
        let e: u64 = rng.gen::<u64>() & g; // e ≤ g
        let f: u64 = rng.gen::<u64>() & mask;
        let lhs = (e | f) & g;
        let rhs = e | (f & g);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Lattice operations commute with unitary conjugation:
/// `u (p ∨ q) u* = (u p u*) ∨ (u q u*)` and likewise for the meet.
pub fn unitary_invariance_sample(
    n: usize,
    trials: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<f64, Error> {
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let p = Projection::new(random_projection(n, rng.gen_range(1..n), rng), tol)?;
        let q = Projection::new(random_projection(n, rng.gen_range(1..n), rng), tol)?;
        let u = random_unitary(n, rng);
        let conj = |m: &CMat| -> Result<Projection, Error> {
            Projection::new(&u * m * u.adjoint(), tol)
        };
        let join_then = conj(p.join(&q, tol)?.matrix())?;
        let then_join = conj(p.matrix())?.join(&conj(q.matrix())?, tol)?;
        worst = worst.max(rel_mat_resid(join_then.matrix(), then_join.matrix()));
        let meet_then = conj(p.meet(&q, tol)?.matrix())?;
        let then_meet = conj(p.matrix())?.meet(&conj(q.matrix())?, tol)?;
        worst = worst.max(rel_mat_resid(meet_then.matrix(), then_meet.matrix()));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn complement_laws() {
        let tol = Tolerance::default();
        let mut r = rng(1);
        let p = Projection::new(random_projection(4, 2, &mut r), &tol).unwrap();
        let pc = p.complement();
        let join = p.join(&pc, &tol).unwrap();
        let meet = p.meet(&pc, &tol).unwrap();
        assert_eq!(join.rank(&tol), 4);
        assert_eq!(meet.rank(&tol), 0);
        assert!(rel_mat_resid(join.matrix(), &eye(4)) < 1e-10);
        // p ∨ p = p
        assert!(rel_mat_resid(p.join(&p, &tol).unwrap().matrix(), p.matrix()) < 1e-10);
    }

    #[test]
    fn two_generic_lines_in_dimension_two() {
        // oracle: dimension count — join rank 2, meet rank 0
        let tol = Tolerance::default();
        let mut r = rng(2);
        let p = Projection::new(random_projection(2, 1, &mut r), &tol).unwrap();
        let q = Projection::new(random_projection(2, 1, &mut r), &tol).unwrap();
        assert_eq!(p.join(&q, &tol).unwrap().rank(&tol), 2);
        assert_eq!(p.meet(&q, &tol).unwrap().rank(&tol), 0);
    }

    #[test]
    fn modular_law_small_campaign() {
        let tol = Tolerance::default();
        let mut r = rng(3);
        let report = modular_law_sample(4, 200, &mut r, &tol).unwrap();
        assert_eq!(report.failures, 0, "max residual {}", report.max_residual);
        assert!(report.max_residual <= 1e-8);
    }

    #[test]
    fn modular_degenerate_cases() {
        // e = 0 reduces to f ∧ g = 0 ∨ (f ∧ g); e = g gives both sides g.
        let tol = Tolerance::default();
        let mut r = rng(4);
        let g = Projection::new(random_projection(4, 2, &mut r), &tol).unwrap();
        let f = Projection::new(random_projection(4, 3, &mut r), &tol).unwrap();
        let zero = Projection::zero(4);
        let lhs = zero.join(&f, &tol).unwrap().meet(&g, &tol).unwrap();
        let rhs = zero.join(&f.meet(&g, &tol).unwrap(), &tol).unwrap();
        assert!(rel_mat_resid(lhs.matrix(), rhs.matrix()) < 1e-9);
        let lhs = g.join(&f, &tol).unwrap().meet(&g, &tol).unwrap();
        assert!(rel_mat_resid(lhs.matrix(), g.matrix()) < 1e-9);
    }

    #[test]
    fn perspectivity_by_rank() {
        let tol = Tolerance::default();
        let mut r = rng(5);
        let p = Projection::new(random_projection(3, 1, &mut r), &tol).unwrap();
        let q = Projection::new(random_projection(3, 2, &mut r), &tol).unwrap();
        let (ok, wit) = perspectivity_check(&p, &q, &mut r, &tol).unwrap();
        assert!(!ok && wit.is_none());
        // p = q: witness is the complement
        let (ok, wit) = perspectivity_check(&p, &p, &mut r, &tol).unwrap();
        assert!(ok);
        let w = wit.unwrap();
        assert_eq!(w.meet(&p, &tol).unwrap().rank(&tol), 0);
        assert_eq!(w.join(&p, &tol).unwrap().rank(&tol), 3);
        // two generic lines in dimension two share a complement
        let a = Projection::new(random_projection(2, 1, &mut r), &tol).unwrap();
        let b = Projection::new(random_projection(2, 1, &mut r), &tol).unwrap();
        let (ok, wit) = perspectivity_check(&a, &b, &mut r, &tol).unwrap();
        assert!(ok);
        let w = wit.unwrap();
        for x in [&a, &b] {
            assert_eq!(w.meet(x, &tol).unwrap().rank(&tol), 0);
            assert_eq!(w.join(x, &tol).unwrap().rank(&tol), 2);
        }
    }

    #[test]
    fn orthomodularity_and_exact_mode() {
        let tol = Tolerance::default();
        let mut r = rng(6);
        let worst = orthomodularity_sample(4, 100, &mut r, &tol).unwrap();
        assert!(worst < 1e-9, "orthomodularity residual {worst}");
        assert!(modular_law_exact(16, &mut r, 10_000));
    }

    #[test]
    fn property_f_is_exact_by_rank() {
        let tol = Tolerance::default();
        let mut r = rng(7);
        let p = Projection::new(random_projection(4, 2, &mut r), &tol).unwrap();
        let q = p.random_subprojection(2, &mut r, &tol);
        assert!(property_f_by_rank(&p, &q, &tol));
        let small = p.random_subprojection(1, &mut r, &tol);
        assert!(property_f_by_rank(&p, &small, &tol)); // vacuous
    }
}
