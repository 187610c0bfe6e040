//! Hermitian 3×3 matrices over the octonions: the 27-dimensional
//! exceptional Jordan algebra and its JB*-triple.
//!
//! Elements satisfy `x_ji = x_ij⋄`; the diagonal entries are fixed by `⋄`
//! and therefore scalar. The Jordan product is the symmetrized octonion
//! matrix product, the algebra involution is the entrywise conjugate-linear
//! `*` composed with the transpose (entrywise complex conjugation on
//! hermitian elements), and the triple product is the one induced by the
//! JB*-algebra structure:
//! `{x,y,z} = (x∘y*)∘z + x∘(y*∘z) − (x∘z)∘y*`.
//!
//! Coordinates (27 complex numbers): the three diagonal scalars, then the
//! octonion entries at positions (0,1), (0,2), (1,2).

use rand_chacha::ChaCha8Rng;

use crate::cayley::{cd_product, diamond, star, CD};
use crate::linalg::{cr, random_phase};
use crate::space::{TripleSpace, TripotentRequest};
use crate::{error::Error, CVec, C};

const OCT: usize = 3; // octonion doubling level

/// A 3×3 matrix of octonions, not necessarily hermitian.
#[derive(Debug, Clone)]
pub struct OctMat3 {
    entries: Vec<CD>, // row-major, 9 entries
}

impl OctMat3 {
    pub fn zeros() -> OctMat3 {
        OctMat3 {
            entries: (0..9).map(|_| CD::zero(OCT)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &CD {
        &self.entries[3 * i + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CD) {
        self.entries[3 * i + j] = v;
    }

    /// Octonion matrix product `self ⊡ other`.
    pub fn mul(&self, other: &OctMat3) -> OctMat3 {
        let mut out = OctMat3::zeros();
        for i in 0..3 {
            for k in 0..3 {
                let mut acc = CD::zero(OCT);
                for j in 0..3 {
                    acc = acc.add(&cd_product(self.get(i, j), other.get(j, k)).expect("level 3"));
                }
                out.set(i, k, acc);
            }
        }
        out
    }

    /// Symmetrized product `(self ⊡ other + other ⊡ self)/2`.
    pub fn jordan(&self, other: &OctMat3) -> OctMat3 {
        self.mul(other).add(&other.mul(self)).scale(cr(0.5))
    }

    /// Entrywise `*` with transpose.
    pub fn star_t(&self) -> OctMat3 {
        let mut out = OctMat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.set(i, j, star(self.get(j, i)));
            }
        }
        out
    }

    /// Entrywise `⋄` with transpose.
    pub fn diamond_t(&self) -> OctMat3 {
        let mut out = OctMat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.set(i, j, diamond(self.get(j, i)));
            }
        }
        out
    }

    pub fn add(&self, other: &OctMat3) -> OctMat3 {
        OctMat3 {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &OctMat3) -> OctMat3 {
        OctMat3 {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, a: C) -> OctMat3 {
        OctMat3 {
            entries: self.entries.iter().map(|e| e.scale(a)).collect(),
        }
    }

    /// Hermiticity defect `‖m − m⋄ᵗ‖` at unit scale.
    pub fn hermitian_residual(&self) -> f64 {
        let d = self.sub(&self.diamond_t());
        let num: f64 = d.entries.iter().map(|e| e.norm2().powi(2)).sum::<f64>().sqrt();
        let den: f64 = self
            .entries
            .iter()
            .map(|e| e.norm2().powi(2))
            .sum::<f64>()
            .sqrt();
        num / crate::tol::unit_scale(den, 0.0)
    }
}

/// A hermitian element, stored as its 27 coordinates.
#[derive(Debug, Clone)]
pub struct H3OElement {
    /// diagonal scalars
    pub diag: [C; 3],
    /// octonion entries above the diagonal: positions (0,1), (0,2), (1,2)
    pub upper: [CD; 3],
}

impl H3OElement {
    pub fn zero() -> H3OElement {
        H3OElement {
            diag: [C::new(0.0, 0.0); 3],
            upper: [CD::zero(OCT), CD::zero(OCT), CD::zero(OCT)],
        }
    }

    /// The unit matrix.
    pub fn unit() -> H3OElement {
        let mut e = H3OElement::zero();
        e.diag = [cr(1.0); 3];
        e
    }

    /// Diagonal idempotent `E_kk`.
    pub fn diag_projection(k: usize) -> H3OElement {
        let mut e = H3OElement::zero();
        e.diag[k] = cr(1.0);
        e
    }

    /// Builds the full octonion matrix.
    pub fn to_mat(&self) -> OctMat3 {
        let mut m = OctMat3::zeros();
        for k in 0..3 {
            m.set(k, k, CD::one(OCT).scale(self.diag[k]));
        }
        let positions = [(0, 1), (0, 2), (1, 2)];
        for (slot, &(i, j)) in positions.iter().enumerate() {
            m.set(i, j, self.upper[slot].clone());
            m.set(j, i, diamond(&self.upper[slot]));
        }
        m
    }

    /// Reads a hermitian matrix back into an element (the caller is
    /// responsible for hermiticity; the diagonal scalar parts and the upper
    /// triangle are taken as-is).
    pub fn from_mat(m: &OctMat3) -> H3OElement {
        let positions = [(0, 1), (0, 2), (1, 2)];
        let mut out = H3OElement::zero();
        for k in 0..3 {
            out.diag[k] = m.get(k, k).coords()[0];
        }
        for (slot, &(i, j)) in positions.iter().enumerate() {
            out.upper[slot] = m.get(i, j).clone();
        }
        out
    }

    /// Flattens to the 27 coordinates.
    pub fn to_coords(&self) -> CVec {
        let mut v = CVec::zeros(27);
        for k in 0..3 {
            v[k] = self.diag[k];
        }
        for slot in 0..3 {
            for t in 0..8 {
                v[3 + 8 * slot + t] = self.upper[slot].coords()[t];
            }
        }
        v
    }

    /// Rebuilds an element from 27 coordinates.
    pub fn from_coords(v: &CVec) -> H3OElement {
        assert_eq!(v.len(), 27);
        let mut out = H3OElement::zero();
        for k in 0..3 {
            out.diag[k] = v[k];
        }
        for slot in 0..3 {
            let coords: Vec<C> = (0..8).map(|t| v[3 + 8 * slot + t]).collect();
            out.upper[slot] = CD::new(OCT, coords).expect("octonion");
        }
        out
    }
}

/// Jordan product of hermitian elements.
pub fn h3o_jordan(x: &H3OElement, y: &H3OElement) -> H3OElement {
    H3OElement::from_mat(&x.to_mat().jordan(&y.to_mat()))
}

/// Triple product `{x,y,z} = (x∘y*)∘z + x∘(y*∘z) − (x∘z)∘y*`.
pub fn h3o_triple(x: &H3OElement, y: &H3OElement, z: &H3OElement) -> H3OElement {
    let (xm, ym, zm) = (x.to_mat(), y.to_mat(), z.to_mat());
    let ys = ym.star_t();
    let t = xm
        .jordan(&ys)
        .jordan(&zm)
        .add(&xm.jordan(&ys.jordan(&zm)))
        .sub(&xm.jordan(&zm).jordan(&ys));
    H3OElement::from_mat(&t)
}

/// The 27-dimensional factor as a triple space.
#[derive(Debug, Clone, Default)]
pub struct H3OFactor;

impl H3OFactor {
    pub fn new() -> H3OFactor {
        H3OFactor
    }
}

impl TripleSpace for H3OFactor {
    fn dim(&self) -> usize {
        27
    }

    fn label(&self) -> String {
        "h3o".to_string()
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        h3o_triple(
            &H3OElement::from_coords(x),
            &H3OElement::from_coords(y),
            &H3OElement::from_coords(z),
        )
        .to_coords()
    }

    fn make_tripotent(
        &self,
        req: TripotentRequest,
        rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        // Model tripotents: every tripotent is an automorphism image of a
        // diagonal one, so diagonal models with random phases cover the
        // three classes. Generic-position samples come from the engine's
        // odd-power fallback (`Any` is left unsupported on purpose).
        match req {
            TripotentRequest::Unitary | TripotentRequest::Complete => {
                let mut e = H3OElement::zero();
                for k in 0..3 {
                    e.diag[k] = random_phase(rng);
                }
                Ok(e.to_coords())
            }
            TripotentRequest::Minimal | TripotentRequest::Rank(1) => {
                let mut e = H3OElement::zero();
                e.diag[0] = random_phase(rng);
                Ok(e.to_coords())
            }
            TripotentRequest::Rank(10) => {
                let mut e = H3OElement::zero();
                e.diag[1] = random_phase(rng);
                e.diag[2] = random_phase(rng);
                Ok(e.to_coords())
            }
            _ => Err(Error::Unsupported("h3o: use the diagonal models".into())),
        }
    }
}

/// Embedding of an octonion pair into the hermitian factor:
/// `(x₁, x₂) ↦ [[0, x₁, x₂], [x₁⋄, 0, 0], [x₂⋄, 0, 0]]`, landing in the
/// Peirce-1 space of the diagonal idempotent `E₀₀`.
pub fn embed_octonion_pair(x1: &CD, x2: &CD) -> H3OElement {
    let mut e = H3OElement::zero();
    e.upper[0] = x1.clone();
    e.upper[1] = x2.clone();
    e
}

/// The triple isomorphism of the ten-dimensional spin factor onto the
/// Peirce-0 space of the diagonal idempotent `E₀₀`:
/// `(x₁,…,x₁₀) ↦ [[0,0,0],[0, x₁+i x₂, i(x₃..x₁₀)],[0, (i(x₃..x₁₀))⋄, x₁−i x₂]]`.
pub fn spin10_map(x: &CVec) -> H3OElement {
    assert_eq!(x.len(), 10);
    let i = C::new(0.0, 1.0);
    let mut e = H3OElement::zero();
    e.diag[1] = x[0] + i * x[1];
    e.diag[2] = x[0] - i * x[1];
    let coords: Vec<C> = (0..8).map(|t| i * x[2 + t]).collect();
    e.upper[2] = CD::new(OCT, coords).expect("octonion");
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_vec_resid;
    use crate::space::{Element, SpaceRef};
    use rand::SeedableRng;
    use std::sync::Arc;

    fn random_h3o(rng: &mut ChaCha8Rng) -> H3OElement {
        let mut e = H3OElement::zero();
        for k in 0..3 {
            e.diag[k] = crate::linalg::random_complex(rng);
        }
        for slot in 0..3 {
            e.upper[slot] = CD::random(OCT, rng);
        }
        e
    }

    #[test]
    fn coords_roundtrip_and_hermiticity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_h3o(&mut rng);
        let v = x.to_coords();
        let back = H3OElement::from_coords(&v);
        assert!(rel_vec_resid(&back.to_coords(), &v) < 1e-15);
        assert!(x.to_mat().hermitian_residual() < 1e-15);
    }

    #[test]
    fn jordan_product_is_commutative_and_unital() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_h3o(&mut rng);
        let y = random_h3o(&mut rng);
        let xy = h3o_jordan(&x, &y);
        let yx = h3o_jordan(&y, &x);
        assert!(rel_vec_resid(&xy.to_coords(), &yx.to_coords()) < 1e-13);
        assert!(xy.to_mat().hermitian_residual() < 1e-13);
        let unit = H3OElement::unit();
        let xu = h3o_jordan(&x, &unit);
        assert!(rel_vec_resid(&xu.to_coords(), &x.to_coords()) < 1e-14);
        // disjoint diagonal blocks multiply to zero
        let e11 = H3OElement::diag_projection(0);
        let e22 = H3OElement::diag_projection(1);
        assert!(h3o_jordan(&e11, &e22).to_coords().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn unit_is_unitary_and_diagonal_idempotents_are_tripotents() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let unit = H3OElement::unit();
        let x = random_h3o(&mut rng);
        let t = h3o_triple(&unit, &unit, &x);
        assert!(rel_vec_resid(&t.to_coords(), &x.to_coords()) < 1e-13);
        let u = H3OElement::diag_projection(0);
        let cube = h3o_triple(&u, &u, &u);
        assert!(rel_vec_resid(&cube.to_coords(), &u.to_coords()) < 1e-14);
    }

    #[test]
    fn jordan_identity_in_the_triple() {
        let s: SpaceRef = Arc::new(H3OFactor::new());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = crate::space::validate_space(&s, 40, &mut rng);
        assert!(v.worst() < 1e-9, "axiom residuals {v:?}");
    }
}
