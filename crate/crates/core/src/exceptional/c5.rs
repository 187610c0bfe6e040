//! The 16-dimensional exceptional factor of octonion pairs, with the triple
//! product
//! `{x,y,z} = ( {x₁,y₁,z₁} + (z₂⊡(y₂*⊡x₁) + x₂⊡(y₂*⊡z₁))/2 ,
//!              {x₂,y₂,z₂} + (z₁⊡(y₁*⊡x₂) + x₁⊡(y₁*⊡z₂))/2 )`,
//! where the single-slot braces are the eight-dimensional spin triple.
//!
//! The factor embeds into the hermitian 3×3 octonion matrices as the
//! off-diagonal first-row block; two independent evaluation routes
//! (the 1×2 matrix formula and the embedding) are provided for
//! cross-validation.

use rand_chacha::ChaCha8Rng;

use crate::cayley::{cd_product, cd_triple_inner, star, CD};
use crate::exceptional::h3o::{embed_octonion_pair, h3o_triple, H3OElement};
use crate::factors::spin::{classify_spin_tripotent, SpinTripotentKind};
use crate::linalg::cr;
use crate::space::{TripleSpace, TripotentRequest};
use crate::{error::Error, CVec, Tolerance, C};

const OCT: usize = 3;

/// An octonion pair.
#[derive(Debug, Clone)]
pub struct C5Element {
    pub x1: CD,
    pub x2: CD,
}

impl C5Element {
    pub fn new(x1: CD, x2: CD) -> C5Element {
        assert_eq!(x1.level(), OCT);
        assert_eq!(x2.level(), OCT);
        C5Element { x1, x2 }
    }

    pub fn zero() -> C5Element {
        C5Element::new(CD::zero(OCT), CD::zero(OCT))
    }

    pub fn to_coords(&self) -> CVec {
        let mut v = CVec::zeros(16);
        for t in 0..8 {
            v[t] = self.x1.coords()[t];
            v[8 + t] = self.x2.coords()[t];
        }
        v
    }

    pub fn from_coords(v: &CVec) -> C5Element {
        assert_eq!(v.len(), 16);
        let a: Vec<C> = (0..8).map(|t| v[t]).collect();
        let b: Vec<C> = (0..8).map(|t| v[8 + t]).collect();
        C5Element::new(CD::new(OCT, a).unwrap(), CD::new(OCT, b).unwrap())
    }
}

/// Coordinatewise triple product.
pub fn c5_triple(x: &C5Element, y: &C5Element, z: &C5Element) -> C5Element {
    let y1s = star(&y.x1);
    let y2s = star(&y.x2);
    let mul = |a: &CD, b: &CD| cd_product(a, b).expect("level 3");

    let cross1 = mul(&z.x2, &mul(&y2s, &x.x1))
        .add(&mul(&x.x2, &mul(&y2s, &z.x1)))
        .scale(cr(0.5));
    let t1 = cd_triple_inner(&x.x1, &y.x1, &z.x1)
        .expect("level 3")
        .add(&cross1);

    let cross2 = mul(&z.x1, &mul(&y1s, &x.x2))
        .add(&mul(&x.x1, &mul(&y1s, &z.x2)))
        .scale(cr(0.5));
    let t2 = cd_triple_inner(&x.x2, &y.x2, &z.x2)
        .expect("level 3")
        .add(&cross2);

    C5Element::new(t1, t2)
}

/// Independent route 1: the 1×2 octonion matrix formula
/// `{x,y,z} = (x⊡(y*⊡z) + z⊡(y*⊡x))/2` with `y*` the conjugate transpose.
pub fn c5_triple_via_matrix(x: &C5Element, y: &C5Element, z: &C5Element) -> C5Element {
    let mul = |a: &CD, b: &CD| cd_product(a, b).expect("level 3");
    // m = y* ⊡ z: 2×2 octonion matrix, entries m[i][j] = y_{i}* ⊡ z_{j}
    let half = |row: &C5Element, m: &[[CD; 2]; 2]| {
        // row ⊡ m, a 1×2 row
        let r1 = mul(&row.x1, &m[0][0]).add(&mul(&row.x2, &m[1][0]));
        let r2 = mul(&row.x1, &m[0][1]).add(&mul(&row.x2, &m[1][1]));
        C5Element::new(r1, r2)
    };
    let ys = [star(&y.x1), star(&y.x2)];
    let m_z = [
        [mul(&ys[0], &z.x1), mul(&ys[0], &z.x2)],
        [mul(&ys[1], &z.x1), mul(&ys[1], &z.x2)],
    ];
    let m_x = [
        [mul(&ys[0], &x.x1), mul(&ys[0], &x.x2)],
        [mul(&ys[1], &x.x1), mul(&ys[1], &x.x2)],
    ];
    let a = half(x, &m_z);
    let b = half(z, &m_x);
    C5Element::new(
        a.x1.add(&b.x1).scale(cr(0.5)),
        a.x2.add(&b.x2).scale(cr(0.5)),
    )
}

/// Independent route 2: through the embedding into the hermitian 3×3
/// octonion matrices.
pub fn c5_triple_via_embedding(x: &C5Element, y: &C5Element, z: &C5Element) -> C5Element {
    let t = h3o_triple(
        &embed_octonion_pair(&x.x1, &x.x2),
        &embed_octonion_pair(&y.x1, &y.x2),
        &embed_octonion_pair(&z.x1, &z.x2),
    );
    pair_of_h3o(&t)
}

/// Reads the first-row block back out of a hermitian matrix (the matrix is
/// expected to lie in the image of the embedding).
pub fn pair_of_h3o(m: &H3OElement) -> C5Element {
    C5Element::new(m.upper[0].clone(), m.upper[1].clone())
}

/// Which tripotent is requested from an octonion tripotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C5TripotentKind {
    /// `(u, 0)` with `u` a minimal octonion tripotent: a minimal tripotent
    /// with Peirce dimensions (1, 10, 5).
    Minimal,
    /// `(u, 0)` with `u` a unitary octonion tripotent: a complete tripotent
    /// with Peirce dimensions (8, 8, 0).
    Complete,
}

/// Builds the model tripotent `(u, 0)` from an octonion tripotent of the
/// matching spin class; rejects a mismatched class.
pub fn c5_tripotent(kind: C5TripotentKind, u: &CD, tol: &Tolerance) -> Result<C5Element, Error> {
    let class = classify_spin_tripotent(&u.as_cvec(), tol);
    let want = match kind {
        C5TripotentKind::Minimal => SpinTripotentKind::Minimal,
        C5TripotentKind::Complete => SpinTripotentKind::Unitary,
    };
    if class != want {
        return Err(Error::KindMismatch(format!(
            "octonion tripotent is {class:?}, requested {kind:?}"
        )));
    }
    Ok(C5Element::new(u.clone(), CD::zero(OCT)))
}

/// The `≤₀` dichotomy: `u ≤₀ v` iff `v` is complete or `u = αv` for a
/// complex unit `α`. Completeness is decided through the Peirce-0 rank of
/// `v`; the scalar-multiple branch through the coordinate ratio.
pub fn c5_le0(
    u: &crate::space::Element,
    v: &crate::space::Element,
    tol: &Tolerance,
) -> Result<bool, Error> {
    if u.norm2() <= tol.eq_tol || v.norm2() <= tol.eq_tol {
        return Err(Error::ZeroTripotent);
    }
    crate::engine::is_tripotent(u, tol)
        .is_tripotent
        .then_some(())
        .ok_or(Error::NotTripotent { residual: f64::NAN })?;
    let frame_v = crate::engine::peirce_frame(v, tol)?;
    let (_, _, r0) = frame_v.ranks();
    if r0 == 0 {
        return Ok(true);
    }
    // scalar multiple? α = ⟨u, v⟩ / ⟨v, v⟩ must be a unit with u = αv
    let uv: C = u
        .coords()
        .iter()
        .zip(v.coords().iter())
        .map(|(a, b)| a * b.conj())
        .sum();
    let vv: f64 = v.coords().iter().map(|z| z.norm_sqr()).sum();
    let alpha = uv / cr(vv);
    let resid = crate::linalg::rel_vec_resid(u.coords(), &v.coords().map(|z| z * alpha));
    Ok(resid <= tol.eq_tol && (alpha.norm() - 1.0).abs() <= tol.eq_tol.sqrt())
}

/// The factor as a triple space.
#[derive(Debug, Clone, Default)]
pub struct C5Factor;

impl C5Factor {
    pub fn new() -> C5Factor {
        C5Factor
    }
}

impl TripleSpace for C5Factor {
    fn dim(&self) -> usize {
        16
    }

    fn label(&self) -> String {
        "c5".to_string()
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        c5_triple(
            &C5Element::from_coords(x),
            &C5Element::from_coords(y),
            &C5Element::from_coords(z),
        )
        .to_coords()
    }

    fn make_tripotent(
        &self,
        req: TripotentRequest,
        rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        let spin8 = crate::factors::spin::SpinFactor::new(8).unwrap();
        match req {
            TripotentRequest::Minimal | TripotentRequest::Rank(1) => {
                let u = spin8.make_tripotent(TripotentRequest::Minimal, rng)?;
                Ok(C5Element::new(CD::from_cvec(OCT, &u)?, CD::zero(OCT)).to_coords())
            }
            TripotentRequest::Complete | TripotentRequest::Rank(8) => {
                let u = spin8.make_tripotent(TripotentRequest::Unitary, rng)?;
                Ok(C5Element::new(CD::from_cvec(OCT, &u)?, CD::zero(OCT)).to_coords())
            }
            TripotentRequest::Unitary => Err(Error::KindMismatch(
                "the octonion-pair factor admits no unitary tripotent".into(),
            )),
            _ => Err(Error::Unsupported(
                "c5: model tripotents are minimal or complete".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_vec_resid;
    use crate::space::{Element, SpaceRef};
    use rand::SeedableRng;
    use std::sync::Arc;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_c5(r: &mut ChaCha8Rng) -> C5Element {
        C5Element::new(CD::random(OCT, r), CD::random(OCT, r))
    }

    #[test]
    fn three_routes_agree() {
        let mut r = rng(40);
        for _ in 0..30 {
            let (x, y, z) = (random_c5(&mut r), random_c5(&mut r), random_c5(&mut r));
            let a = c5_triple(&x, &y, &z).to_coords();
            let b = c5_triple_via_matrix(&x, &y, &z).to_coords();
            let c = c5_triple_via_embedding(&x, &y, &z).to_coords();
            assert!(rel_vec_resid(&a, &b) < 1e-12, "coordinate vs matrix");
            assert!(rel_vec_resid(&a, &c) < 1e-12, "coordinate vs embedding");
        }
    }

    #[test]
    fn both_coordinate_slots_are_subtriples() {
        let mut r = rng(41);
        for _ in 0..20 {
            let a = C5Element::new(CD::random(OCT, &mut r), CD::zero(OCT));
            let b = C5Element::new(CD::random(OCT, &mut r), CD::zero(OCT));
            let c = C5Element::new(CD::random(OCT, &mut r), CD::zero(OCT));
            let t = c5_triple(&a, &b, &c);
            assert!(t.x2.norm2() < 1e-13, "second slot stays zero");
            // and the first slot carries the spin-8 triple
            let spin = crate::cayley::cd_spin_triple(&a.x1, &b.x1, &c.x1);
            assert!(rel_vec_resid(&t.x1.as_cvec(), &spin.as_cvec()) < 1e-12);
        }
    }

    #[test]
    fn model_tripotents_are_tripotents() {
        let tol = Tolerance::default();
        let s: SpaceRef = Arc::new(C5Factor::new());
        let mut r = rng(42);
        for req in [TripotentRequest::Minimal, TripotentRequest::Complete] {
            let u = Element::new(s.clone(), s.make_tripotent(req, &mut r).unwrap());
            let chk = crate::engine::is_tripotent(&u, &tol);
            assert!(chk.is_tripotent, "{req:?}: residual {}", chk.residual);
        }
        assert!(s
            .make_tripotent(TripotentRequest::Unitary, &mut r)
            .is_err());
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let tol = Tolerance::default();
        let mut r = rng(43);
        let spin8 = crate::factors::spin::SpinFactor::new(8).unwrap();
        let unitary = spin8
            .make_tripotent(TripotentRequest::Unitary, &mut r)
            .unwrap();
        let u = CD::from_cvec(OCT, &unitary).unwrap();
        assert!(c5_tripotent(C5TripotentKind::Minimal, &u, &tol).is_err());
        assert!(c5_tripotent(C5TripotentKind::Complete, &u, &tol).is_ok());
    }

    #[test]
    fn axioms_hold() {
        let s: SpaceRef = Arc::new(C5Factor::new());
        let mut r = rng(44);
        let v = crate::space::validate_space(&s, 40, &mut r);
        assert!(v.worst() < 1e-9, "axiom residuals {v:?}");
    }
}
