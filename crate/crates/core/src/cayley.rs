//! The Cayley-Dickson doubling ladder over the complex field.
//!
//! Level `n` lives on `ℂ^(2^n)`; level 3 is the complex octonion algebra.
//! Each level carries the doubling product `⊡`, a linear involution `⋄`,
//! a conjugate-linear involution `*`, the coordinatewise conjugation, and
//! the spin-factor triple product of dimension `2^n`.
//!
//! Doubling rules on pairs `(x₁, x₂)`:
//! ```text
//! (x₁,x₂)⋄        = (x₁⋄, −x₂)
//! (x₁,x₂)*        = (x₁*, −conj(x₂))
//! (x₁,x₂)⊡(y₁,y₂) = (x₁⊡y₁ − y₂⊡x₂⋄ , x₁⋄⊡y₂ + y₁⊡x₂)
//! ```
//! with complex multiplication, the identity and complex conjugation at
//! level 0. Basis vectors are the canonical coordinate vectors of
//! `ℂ^(2^n)` in doubling order.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;

use crate::factors::spin::SpinFactor;
use crate::linalg::{cr, random_complex};
use crate::space::{TripleSpace, TripotentRequest};
use crate::{error::Error, CMat, CVec, Tolerance, C};

/// Highest implemented doubling level (the octonions).
pub const MAX_LEVEL: usize = 3;

/// An element of the level-`n` doubling algebra: `2^n` complex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CD {
    level: usize,
    coords: Vec<C>,
}

impl CD {
    pub fn new(level: usize, coords: Vec<C>) -> Result<CD, Error> {
        if level > MAX_LEVEL {
            return Err(Error::BadSize(format!("doubling level {level} > {MAX_LEVEL}")));
        }
        if coords.len() != (1 << level) {
            return Err(Error::BadSize(format!(
                "level {level} needs {} coordinates, got {}",
                1 << level,
                coords.len()
            )));
        }
        Ok(CD { level, coords })
    }

    /// The unit `1` of the level-`n` algebra.
    pub fn one(level: usize) -> CD {
        let mut coords = vec![C::new(0.0, 0.0); 1 << level];
        coords[0] = cr(1.0);
        CD { level, coords }
    }

    /// The zero element.
    pub fn zero(level: usize) -> CD {
        CD {
            level,
            coords: vec![C::new(0.0, 0.0); 1 << level],
        }
    }

    /// Canonical basis vector `e_k` (1-based index, doubling order).
    pub fn basis(level: usize, k: usize) -> CD {
        assert!(k >= 1 && k <= 1 << level);
        let mut coords = vec![C::new(0.0, 0.0); 1 << level];
        coords[k - 1] = cr(1.0);
        CD { level, coords }
    }

    /// Random element with standard-normal coordinates.
    pub fn random(level: usize, rng: &mut ChaCha8Rng) -> CD {
        CD {
            level,
            coords: (0..1usize << level).map(|_| random_complex(rng)).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn as_cvec(&self) -> CVec {
        CVec::from_vec(self.coords.clone())
    }

    pub fn from_cvec(level: usize, v: &CVec) -> Result<CD, Error> {
        CD::new(level, v.iter().copied().collect())
    }

    /// Hilbertian norm of the coordinates.
    pub fn norm2(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Is this element a complex multiple of the unit?
    pub fn is_scalar(&self, tol: &Tolerance) -> bool {
        self.coords[1..]
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
            <= tol.eq_tol * crate::tol::unit_scale(self.norm2(), 0.0)
    }

    pub fn scale(&self, a: C) -> CD {
        CD {
            level: self.level,
            coords: self.coords.iter().map(|z| z * a).collect(),
        }
    }

    pub fn add(&self, other: &CD) -> CD {
        assert_eq!(self.level, other.level);
        CD {
            level: self.level,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CD) -> CD {
        self.add(&other.scale(cr(-1.0)))
    }

    /// Canonical embedding `x ↦ (x, 0)` into the next level.
    pub fn embed_up(&self) -> Result<CD, Error> {
        if self.level >= MAX_LEVEL {
            return Err(Error::BadSize("cannot embed beyond the octonions".into()));
        }
        let mut coords = self.coords.clone();
        coords.extend(vec![C::new(0.0, 0.0); self.coords.len()]);
        CD::new(self.level + 1, coords)
    }
}

/// `x ⊡ y`.
pub fn cd_product(x: &CD, y: &CD) -> Result<CD, Error> {
    if x.level != y.level {
        return Err(Error::LevelMismatch {
            lhs: x.level,
            rhs: y.level,
        });
    }
    let mut out = vec![C::new(0.0, 0.0); x.coords.len()];
    mul_slices(&x.coords, &y.coords, &mut out);
    Ok(CD {
        level: x.level,
        coords: out,
    })
}

/// Linear involution `⋄`: keeps the scalar coordinate, negates the rest.
pub fn diamond(x: &CD) -> CD {
    let mut coords = x.coords.clone();
    for z in coords.iter_mut().skip(1) {
        *z = -*z;
    }
    CD {
        level: x.level,
        coords,
    }
}

/// Conjugate-linear involution `*`: `x* = conj(x⋄)`.
pub fn star(x: &CD) -> CD {
    let mut coords: Vec<C> = x.coords.iter().map(|z| z.conj()).collect();
    for z in coords.iter_mut().skip(1) {
        *z = -*z;
    }
    CD {
        level: x.level,
        coords,
    }
}

/// Coordinatewise conjugation.
pub fn bar(x: &CD) -> CD {
    CD {
        level: x.level,
        coords: x.coords.iter().map(|z| z.conj()).collect(),
    }
}

/// Sesquilinear inner product `⟨x, y⟩ = Σ x_k conj(y_k)`.
pub fn cd_ip(x: &CD, y: &CD) -> C {
    x.coords
        .iter()
        .zip(&y.coords)
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// Recursive doubling product on raw coordinate slices. Levels are at most
/// 3, so all scratch space lives on the stack.
fn mul_slices(x: &[C], y: &[C], out: &mut [C]) {
    let n = x.len();
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (x1, x2) = x.split_at(h);
    let (y1, y2) = y.split_at(h);
    let zero = C::new(0.0, 0.0);
    let mut a = [zero; 4];
    let mut b = [zero; 4];
    let mut d = [zero; 4];
    // first half: x1 ⊡ y1 − y2 ⊡ x2⋄
    mul_slices(x1, y1, &mut a[..h]);
    d[..h].copy_from_slice(x2);
    for z in d[1..h].iter_mut() {
        *z = -*z;
    }
    mul_slices(y2, &d[..h], &mut b[..h]);
    for k in 0..h {
        out[k] = a[k] - b[k];
    }
    // second half: x1⋄ ⊡ y2 + y1 ⊡ x2
    d[..h].copy_from_slice(x1);
    for z in d[1..h].iter_mut() {
        *z = -*z;
    }
    mul_slices(&d[..h], y2, &mut a[..h]);
    mul_slices(y1, x2, &mut b[..h]);
    for k in 0..h {
        out[h + k] = a[k] + b[k];
    }
}

/// The spin-factor triple product on level-`n` coordinates.
pub fn cd_spin_triple(x: &CD, y: &CD, z: &CD) -> CD {
    let spin = SpinFactor::new(x.coords.len()).expect("dim ≥ 1");
    let t = spin.triple(&x.as_cvec(), &y.as_cvec(), &z.as_cvec());
    CD::from_cvec(x.level, &t).expect("same level")
}

/// `{x,y,z}` through the doubling product, inner bracketing:
/// `(x⊡(y*⊡z) + z⊡(y*⊡x))/2`.
pub fn cd_triple_inner(x: &CD, y: &CD, z: &CD) -> Result<CD, Error> {
    let ys = star(y);
    let t1 = cd_product(x, &cd_product(&ys, z)?)?;
    let t2 = cd_product(z, &cd_product(&ys, x)?)?;
    Ok(t1.add(&t2).scale(cr(0.5)))
}

/// `{x,y,z}` through the doubling product, outer bracketing:
/// `((x⊡y*)⊡z + (z⊡y*)⊡x)/2`.
pub fn cd_triple_outer(x: &CD, y: &CD, z: &CD) -> Result<CD, Error> {
    let ys = star(y);
    let t1 = cd_product(&cd_product(x, &ys)?, z)?;
    let t2 = cd_product(&cd_product(z, &ys)?, x)?;
    Ok(t1.add(&t2).scale(cr(0.5)))
}

/// The level-`n` algebra as the spin factor of dimension `2^n`.
#[derive(Debug, Clone)]
pub struct CayleySpinSpace {
    level: usize,
    spin: SpinFactor,
}

/// Builds the spin-factor view of doubling level `n ≤ 3`.
pub fn cayley_spin_space(level: usize) -> Result<CayleySpinSpace, Error> {
    if level > MAX_LEVEL {
        return Err(Error::BadSize(format!("doubling level {level} > {MAX_LEVEL}")));
    }
    Ok(CayleySpinSpace {
        level,
        spin: SpinFactor::new(1 << level)?,
    })
}

impl CayleySpinSpace {
    pub fn level(&self) -> usize {
        self.level
    }
}

impl TripleSpace for CayleySpinSpace {
    fn dim(&self) -> usize {
        1 << self.level
    }

    fn label(&self) -> String {
        format!("cayley:{}", self.level)
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        self.spin.triple(x, y, z)
    }

    fn norm(&self, x: &CVec) -> Option<f64> {
        self.spin.norm(x)
    }

    fn make_tripotent(
        &self,
        req: TripotentRequest,
        rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        self.spin.make_tripotent(req, rng)
    }
}

/// A concrete sample violating an algebraic law, kept for reporting.
#[derive(Debug, Clone)]
pub struct CdViolation {
    pub x: CD,
    pub y: CD,
    pub z: Option<CD>,
    pub residual: f64,
}

/// Report of the per-level identity suite.
#[derive(Debug, Clone)]
pub struct CdIdentityReport {
    pub level: usize,
    pub samples: usize,
    /// worst residual per identity that must hold at this level
    pub max_residuals: BTreeMap<&'static str, f64>,
    /// a commutativity violation, when one exists at this level
    pub commutativity_violation: Option<CdViolation>,
    /// an associativity violation, when one exists at this level
    pub associativity_violation: Option<CdViolation>,
}

impl CdIdentityReport {
    pub fn worst_residual(&self) -> f64 {
        self.max_residuals.values().copied().fold(0.0, f64::max)
    }
}

fn resid(a: &CD, b: &CD) -> f64 {
    let diff = a.sub(b);
    diff.norm2() / crate::tol::unit_scale(a.norm2(), b.norm2())
}

fn resid_scalar(a: C, b: C) -> f64 {
    (a - b).norm() / crate::tol::unit_scale(a.norm(), b.norm())
}

/// Runs the identity suite at a level: verifies the involution laws, unit
/// and scalar action, the norm form, alternativity and its linearization,
/// the inner-product and triple-product formulas and the adjoint laws; and
/// probes commutativity/associativity, recording a concrete violation when
/// one is found (levels ≥ 2 are non-commutative, level 3 is non-associative).
pub fn identity_suite(level: usize, samples: usize, rng: &mut ChaCha8Rng) -> CdIdentityReport {
    let mut max: BTreeMap<&'static str, f64> = BTreeMap::new();
    let bump = |key: &'static str, v: f64, max: &mut BTreeMap<&'static str, f64>| {
        let e = max.entry(key).or_insert(0.0);
        if v > *e {
            *e = v;
        }
    };
    let mut comm: Option<CdViolation> = None;
    let mut assoc: Option<CdViolation> = None;

    let normalize = |mut v: CD| {
        let n = v.norm2();
        if n > 0.0 {
            v = v.scale(cr(1.0 / n));
        }
        v
    };

    for _ in 0..samples {
        let x = normalize(CD::random(level, rng));
        let y = normalize(CD::random(level, rng));
        let z = normalize(CD::random(level, rng));
        let one = CD::one(level);

        // unit
        bump("unit", resid(&cd_product(&one, &x).unwrap(), &x), &mut max);
        bump("unit", resid(&cd_product(&x, &one).unwrap(), &x), &mut max);

        // scalar action
        let lam = random_complex(rng);
        let lam_elt = one.scale(lam);
        bump(
            "scalar-action",
            resid(&cd_product(&x, &lam_elt).unwrap(), &x.scale(lam)),
            &mut max,
        );
        bump(
            "scalar-action",
            resid(&cd_product(&lam_elt, &x).unwrap(), &x.scale(lam)),
            &mut max,
        );

        // involutions
        bump("diamond-involution", resid(&diamond(&diamond(&x)), &x), &mut max);
        bump("star-involution", resid(&star(&star(&x)), &x), &mut max);
        bump("involution-compat", resid(&star(&x), &bar(&diamond(&x))), &mut max);
        bump("involution-compat", resid(&star(&x), &diamond(&bar(&x))), &mut max);

        let xy = cd_product(&x, &y).unwrap();
        bump(
            "conj-multiplicative",
            resid(&bar(&xy), &cd_product(&bar(&x), &bar(&y)).unwrap()),
            &mut max,
        );
        bump(
            "diamond-antihom",
            resid(&diamond(&xy), &cd_product(&diamond(&y), &diamond(&x)).unwrap()),
            &mut max,
        );
        bump(
            "star-antihom",
            resid(&star(&xy), &cd_product(&star(&y), &star(&x)).unwrap()),
            &mut max,
        );

        // embedding into the next level
        if level < MAX_LEVEL {
            let xe = x.embed_up().unwrap();
            let ye = y.embed_up().unwrap();
            bump(
                "embedding",
                resid(&cd_product(&xe, &ye).unwrap(), &xy.embed_up().unwrap()),
                &mut max,
            );
            bump("embedding", resid(&diamond(&xe), &diamond(&x).embed_up().unwrap()), &mut max);
            bump("embedding", resid(&star(&xe), &star(&x).embed_up().unwrap()), &mut max);
        }

        // diamond fixes exactly the scalars
        bump(
            "diamond-fixes-scalars",
            resid(&diamond(&one.scale(lam)), &one.scale(lam)),
            &mut max,
        );
        if level >= 1 {
            let tail: f64 = x.coords[1..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let moved = diamond(&x).sub(&x).norm2();
            // ‖x⋄ − x‖ = 2·‖tail of x‖ exactly
            bump("diamond-fixes-scalars", (moved - 2.0 * tail).abs(), &mut max);
        }

        // norm form x⋄ ⊡ x ∈ ℂ·1 (and its value is the bilinear dot of x with itself)
        let nf = cd_product(&diamond(&x), &x).unwrap();
        let tail: f64 = nf.coords[1..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        bump("norm-form-scalar", tail, &mut max);
        let dot: C = x.coords.iter().map(|c| c * c).sum();
        bump("norm-form-value", resid_scalar(nf.coords[0], dot), &mut max);

        // alternativity (holds at every level ≤ 3)
        let xx = cd_product(&x, &x).unwrap();
        bump(
            "alternative-left",
            resid(
                &cd_product(&x, &cd_product(&x, &y).unwrap()).unwrap(),
                &cd_product(&xx, &y).unwrap(),
            ),
            &mut max,
        );
        bump(
            "alternative-right",
            resid(
                &cd_product(&cd_product(&y, &x).unwrap(), &x).unwrap(),
                &cd_product(&y, &xx).unwrap(),
            ),
            &mut max,
        );

        // linearized alternativity:
        // x⊡(y⊡z) + z⊡(y⊡x) = (x⊡y)⊡z + (z⊡y)⊡x
        let lhs = cd_product(&x, &cd_product(&y, &z).unwrap())
            .unwrap()
            .add(&cd_product(&z, &cd_product(&y, &x).unwrap()).unwrap());
        let rhs = cd_product(&cd_product(&x, &y).unwrap(), &z)
            .unwrap()
            .add(&cd_product(&cd_product(&z, &y).unwrap(), &x).unwrap());
        bump("linearized-alternative", resid(&lhs, &rhs), &mut max);

        // inner product formula ⟨x,y⟩ = (x⊡y* + ȳ⊡x⋄)/2 and ⋄-invariance
        let ip_elt = cd_product(&x, &star(&y))
            .unwrap()
            .add(&cd_product(&bar(&y), &diamond(&x)).unwrap())
            .scale(cr(0.5));
        let tail: f64 = ip_elt.coords[1..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        bump("ip-formula-scalar", tail, &mut max);
        bump("ip-formula-value", resid_scalar(ip_elt.coords[0], cd_ip(&x, &y)), &mut max);
        bump(
            "ip-diamond-invariance",
            resid_scalar(cd_ip(&diamond(&x), &diamond(&y)), cd_ip(&x, &y)),
            &mut max,
        );

        // the unit is a unitary tripotent of the spin structure
        bump(
            "unit-unitary",
            resid(&cd_spin_triple(&one, &one, &x), &x),
            &mut max,
        );

        // triple-product formula (both bracketings) against the spin triple
        let spin = cd_spin_triple(&x, &y, &z);
        bump("triple-formula-inner", resid(&cd_triple_inner(&x, &y, &z).unwrap(), &spin), &mut max);
        bump("triple-formula-outer", resid(&cd_triple_outer(&x, &y, &z).unwrap(), &spin), &mut max);

        // adjoint laws ⟨x⊡z*, y⟩ = ⟨x, y⊡z⟩ and ⟨z*⊡x, y⟩ = ⟨x, z⊡y⟩
        bump(
            "adjoint-law-right",
            resid_scalar(
                cd_ip(&cd_product(&x, &star(&z)).unwrap(), &y),
                cd_ip(&x, &cd_product(&y, &z).unwrap()),
            ),
            &mut max,
        );
        bump(
            "adjoint-law-left",
            resid_scalar(
                cd_ip(&cd_product(&star(&z), &x).unwrap(), &y),
                cd_ip(&x, &cd_product(&z, &y).unwrap()),
            ),
            &mut max,
        );

        // probes for the laws that are supposed to fail at higher levels
        let comm_resid = resid(&xy, &cd_product(&y, &x).unwrap());
        if comm_resid > 1e-6 && comm.as_ref().map_or(true, |v| comm_resid > v.residual) {
            comm = Some(CdViolation {
                x: x.clone(),
                y: y.clone(),
                z: None,
                residual: comm_resid,
            });
        }
        let assoc_resid = resid(
            &cd_product(&xy, &z).unwrap(),
            &cd_product(&x, &cd_product(&y, &z).unwrap()).unwrap(),
        );
        if assoc_resid > 1e-6 && assoc.as_ref().map_or(true, |v| assoc_resid > v.residual) {
            assoc = Some(CdViolation {
                x: x.clone(),
                y: y.clone(),
                z: Some(z.clone()),
                residual: assoc_resid,
            });
        }
    }

    CdIdentityReport {
        level,
        samples,
        max_residuals: max,
        commutativity_violation: comm,
        associativity_violation: assoc,
    }
}

/// The `*`-isomorphism of the level-2 algebra onto the 2×2 complex
/// matrices, extended linearly from the basis images
/// `e₁ ↦ I`, `e₂ ↦ diag(i, −i)`, `e₃ ↦ [[0,1],[−1,0]]`, `e₄ ↦ [[0,−i],[−i,0]]`.
pub fn iso_a2_to_m2(x: &CD) -> Result<CMat, Error> {
    if x.level != 2 {
        return Err(Error::LevelMismatch {
            lhs: x.level,
            rhs: 2,
        });
    }
    let i = C::new(0.0, 1.0);
    let images = [
        CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(1.0)]),
        CMat::from_row_slice(2, 2, &[i, cr(0.0), cr(0.0), -i]),
        CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(-1.0), cr(0.0)]),
        CMat::from_row_slice(2, 2, &[cr(0.0), -i, -i, cr(0.0)]),
    ];
    let mut out = CMat::zeros(2, 2);
    for (k, img) in images.iter().enumerate() {
        out += img.map(|z| z * x.coords[k]);
    }
    Ok(out)
}

/// The `*`- and triple-isomorphism of the level-1 algebra onto `ℂ ⊕ ℂ`
/// with the sup norm: `(x₁, x₂) ↦ (x₁ + i x₂, x₁ − i x₂)`.
pub fn iso_a1_to_c2(x: &CD) -> Result<(C, C), Error> {
    if x.level != 1 {
        return Err(Error::LevelMismatch {
            lhs: x.level,
            rhs: 1,
        });
    }
    let i = C::new(0.0, 1.0);
    Ok((x.coords[0] + i * x.coords[1], x.coords[0] - i * x.coords[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn quaternion_level_squares_to_minus_one() {
        for k in 2..=4 {
            let e = CD::basis(2, k);
            let sq = cd_product(&e, &e).unwrap();
            assert!(resid(&sq, &CD::one(2).scale(cr(-1.0))) < 1e-15, "e{k}² = -1");
        }
    }

    #[test]
    fn quaternion_orientation_of_the_doubling_product() {
        // With the doubling rules above, the canonical basis multiplies as
        // e₂⊡e₃ = −e₄ (and cyclically e₃⊡e₄ = −e₂, e₄⊡e₂ = −e₃); the
        // anticommutators vanish.
        let e2 = CD::basis(2, 2);
        let e3 = CD::basis(2, 3);
        let e4 = CD::basis(2, 4);
        assert!(resid(&cd_product(&e2, &e3).unwrap(), &e4.scale(cr(-1.0))) < 1e-15);
        assert!(resid(&cd_product(&e3, &e2).unwrap(), &e4) < 1e-15);
        assert!(resid(&cd_product(&e3, &e4).unwrap(), &e2.scale(cr(-1.0))) < 1e-15);
        assert!(resid(&cd_product(&e4, &e2).unwrap(), &e3.scale(cr(-1.0))) < 1e-15);
    }

    #[test]
    fn octonion_norm_form_is_scalar() {
        let mut r = rng(21);
        let tol = Tolerance::default();
        for _ in 0..20 {
            let x = CD::random(3, &mut r);
            let nf = cd_product(&diamond(&x), &x).unwrap();
            assert!(nf.is_scalar(&tol));
        }
    }

    #[test]
    fn diamond_fixes_exactly_the_scalars() {
        let tol = Tolerance::default();
        let one = CD::one(3).scale(C::new(2.0, -1.0));
        assert!(resid(&diamond(&one), &one) < 1e-15);
        let e5 = CD::basis(3, 5);
        assert!(resid(&diamond(&e5), &e5) > 1.0);
        let _ = tol;
    }

    #[test]
    fn identity_suite_levels() {
        let mut r = rng(33);
        // level 1: commutative and associative
        let rep1 = identity_suite(1, 60, &mut r);
        assert!(rep1.worst_residual() < 1e-12, "level-1 residuals {:?}", rep1.max_residuals);
        assert!(rep1.commutativity_violation.is_none());
        assert!(rep1.associativity_violation.is_none());
        // level 2: associative but not commutative
        let rep2 = identity_suite(2, 60, &mut r);
        assert!(rep2.commutativity_violation.is_some());
        assert!(rep2.associativity_violation.is_none());
        // level 3: neither, but alternative
        let rep3 = identity_suite(3, 60, &mut r);
        assert!(rep3.commutativity_violation.is_some());
        assert!(rep3.associativity_violation.is_some());
        assert!(rep3.max_residuals["alternative-left"] < 1e-12);
        assert!(rep3.max_residuals["alternative-right"] < 1e-12);
        assert!(rep3.max_residuals["linearized-alternative"] < 1e-12);
        assert!(rep3.worst_residual() < 1e-10, "level-3 residuals {:?}", rep3.max_residuals);
    }

    #[test]
    fn m2_isomorphism_is_multiplicative_and_star_preserving() {
        let mut r = rng(5);
        for _ in 0..40 {
            let x = CD::random(2, &mut r);
            let y = CD::random(2, &mut r);
            let lhs = iso_a2_to_m2(&cd_product(&x, &y).unwrap()).unwrap();
            let rhs = iso_a2_to_m2(&x).unwrap() * iso_a2_to_m2(&y).unwrap();
            assert!(crate::linalg::rel_mat_resid(&lhs, &rhs) < 1e-12);
            let ls = iso_a2_to_m2(&star(&x)).unwrap();
            let rs = iso_a2_to_m2(&x).unwrap().adjoint();
            assert!(crate::linalg::rel_mat_resid(&ls, &rs) < 1e-12);
        }
        // e₁ goes to the identity
        let id = iso_a2_to_m2(&CD::one(2)).unwrap();
        assert!(crate::linalg::rel_mat_resid(&id, &crate::linalg::eye(2)) < 1e-15);
        // φ(e₂⊡e₃) = φ(e₂)φ(e₃): explicit 2×2 product as the oracle
        let e2 = CD::basis(2, 2);
        let e3 = CD::basis(2, 3);
        let prod = iso_a2_to_m2(&cd_product(&e2, &e3).unwrap()).unwrap();
        let expl = iso_a2_to_m2(&e2).unwrap() * iso_a2_to_m2(&e3).unwrap();
        assert!(crate::linalg::rel_mat_resid(&prod, &expl) < 1e-15);
    }

    #[test]
    fn spin_norm_matches_operator_norm_through_m2() {
        let mut r = rng(6);
        for _ in 0..40 {
            let x = CD::random(2, &mut r);
            let spin_norm = SpinFactor::spin_norm(&x.as_cvec());
            let op = crate::linalg::op_norm(&iso_a2_to_m2(&x).unwrap());
            assert!((spin_norm - op).abs() < 1e-10 * spin_norm.max(1.0));
        }
    }

    #[test]
    fn c2_isomorphism() {
        // (1,0) ↦ (1,1); (0,1) ↦ (i,−i), a unitary tripotent on both sides
        let one = CD::one(1);
        let (a, b) = iso_a1_to_c2(&one).unwrap();
        assert!((a - cr(1.0)).norm() < 1e-15 && (b - cr(1.0)).norm() < 1e-15);
        let e2 = CD::basis(1, 2);
        let (a, b) = iso_a1_to_c2(&e2).unwrap();
        assert!((a - C::new(0.0, 1.0)).norm() < 1e-15);
        assert!((b - C::new(0.0, -1.0)).norm() < 1e-15);
        // multiplicativity on random pairs; oracle: componentwise products
        let mut r = rng(7);
        for _ in 0..50 {
            let x = CD::random(1, &mut r);
            let y = CD::random(1, &mut r);
            let (px, qx) = iso_a1_to_c2(&x).unwrap();
            let (py, qy) = iso_a1_to_c2(&y).unwrap();
            let (pp, qq) = iso_a1_to_c2(&cd_product(&x, &y).unwrap()).unwrap();
            assert!((pp - px * py).norm() < 1e-12);
            assert!((qq - qx * qy).norm() < 1e-12);
        }
    }

    #[test]
    fn level_mismatch_is_rejected() {
        let x = CD::one(1);
        let y = CD::one(2);
        assert!(matches!(
            cd_product(&x, &y),
            Err(Error::LevelMismatch { .. })
        ));
        assert!(iso_a2_to_m2(&x).is_err());
        assert!(iso_a1_to_c2(&y).is_err());
    }
}
