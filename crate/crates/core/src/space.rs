//! The abstract carrier of a finite-dimensional JB*-triple.
//!
//! A [`TripleSpace`] knows its coordinate dimension, evaluates the triple
//! product on coordinate vectors, and optionally evaluates the factor norm.
//! The coordinate inner product is always the Hilbertian ℓ² product on the
//! coordinates; subspace work happens there. Peirce projections are *not*
//! assumed orthogonal with respect to it — all verdicts go through the
//! projector polynomials, never through orthogonal projection, unless a
//! factor guarantees the coincidence.

use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::linalg::{random_cvec, vec_norm};
use crate::{error::Error, CMat, CVec};

/// Shared handle to a triple space.
pub type SpaceRef = Arc<dyn TripleSpace>;

/// Requested shape for a factor-built random tripotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripotentRequest {
    /// Any nonzero tripotent the factor finds natural, rank chosen at random.
    Any,
    /// Factor-specific rank parameter (partial-isometry rank for matrix
    /// factors; for antisymmetric factors the initial projection gets rank
    /// `2*rank`).
    Rank(usize),
    /// A minimal tripotent.
    Minimal,
    /// A complete tripotent.
    Complete,
    /// A unitary tripotent.
    Unitary,
}

/// A concrete finite-dimensional JB*-triple in fixed coordinates.
pub trait TripleSpace: Send + Sync {
    /// Coordinate dimension.
    fn dim(&self) -> usize;

    /// Human-readable factor identifier, also used for space-equality checks.
    fn label(&self) -> String;

    /// Triple product `{x, y, z}` on coordinate vectors. Symmetric bilinear
    /// in `x, z`, conjugate-linear in `y`.
    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec;

    /// The factor norm, when the factor carries a formula for it.
    fn norm(&self, _x: &CVec) -> Option<f64> {
        None
    }

    /// Factor-specific tripotent constructor. Factors without a classified
    /// constructor return `Unsupported`; the engine then falls back to the
    /// odd-power iteration.
    fn make_tripotent(
        &self,
        _req: TripotentRequest,
        _rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        Err(Error::Unsupported(format!(
            "{}: no classified tripotent constructor",
            self.label()
        )))
    }
}

/// An element of a triple space: a space handle plus a coordinate vector.
#[derive(Clone)]
pub struct Element {
    space: SpaceRef,
    coords: CVec,
}

impl Element {
    pub fn new(space: SpaceRef, coords: CVec) -> Element {
        assert_eq!(
            coords.len(),
            space.dim(),
            "coordinate length must match space dimension"
        );
        Element { space, coords }
    }

    /// Zero element.
    pub fn zero(space: SpaceRef) -> Element {
        let n = space.dim();
        Element::new(space, CVec::zeros(n))
    }

    /// Random element with standard-normal coordinates.
    pub fn random(space: SpaceRef, rng: &mut ChaCha8Rng) -> Element {
        let n = space.dim();
        Element::new(space, random_cvec(n, rng))
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn coords(&self) -> &CVec {
        &self.coords
    }

    pub fn into_coords(self) -> CVec {
        self.coords
    }

    /// Hilbertian coordinate norm.
    pub fn norm2(&self) -> f64 {
        vec_norm(&self.coords)
    }

    /// Factor norm, when available.
    pub fn factor_norm(&self) -> Option<f64> {
        self.space.norm(&self.coords)
    }

    /// Triple product `{self, y, z}` within the common space.
    pub fn triple(&self, y: &Element, z: &Element) -> Result<Element, Error> {
        same_space(self, y)?;
        same_space(self, z)?;
        Ok(Element::new(
            self.space.clone(),
            self.space.triple(&self.coords, &y.coords, &z.coords),
        ))
    }

    /// Coordinatewise linear combination in the same space.
    pub fn axpy(&self, a: crate::C, other: &Element) -> Result<Element, Error> {
        same_space(self, other)?;
        Ok(Element::new(
            self.space.clone(),
            &self.coords + other.coords.scale(1.0).map(|z| z * a),
        ))
    }

    /// `self + other`.
    pub fn add(&self, other: &Element) -> Result<Element, Error> {
        same_space(self, other)?;
        Ok(Element::new(self.space.clone(), &self.coords + &other.coords))
    }

    /// `self - other`.
    pub fn sub(&self, other: &Element) -> Result<Element, Error> {
        same_space(self, other)?;
        Ok(Element::new(self.space.clone(), &self.coords - &other.coords))
    }

    /// Scalar multiple.
    pub fn scale(&self, a: crate::C) -> Element {
        Element::new(self.space.clone(), self.coords.map(|z| z * a))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}; dim {}]", self.space.label(), self.coords.len())
    }
}

/// Both elements must live in the same space (matched by label).
pub fn same_space(a: &Element, b: &Element) -> Result<(), Error> {
    if a.space.label() != b.space.label() || a.space.dim() != b.space.dim() {
        return Err(Error::SpaceMismatch {
            lhs: a.space.label(),
            rhs: b.space.label(),
        });
    }
    Ok(())
}

/// A subtriple of a parent space, spanned by an orthonormal coordinate
/// basis. The triple product is evaluated upstairs and read back through
/// the basis; this is exact whenever the span is actually closed under the
/// parent product.
pub struct SubTriple {
    parent: SpaceRef,
    basis: CMat,
    label: String,
}

impl SubTriple {
    /// Wraps the span of the columns of `basis` (orthonormalized by the
    /// caller, e.g. a Peirce subspace basis) as a triple space.
    pub fn new(parent: SpaceRef, basis: CMat, label: impl Into<String>) -> Arc<SubTriple> {
        assert_eq!(basis.nrows(), parent.dim());
        Arc::new(SubTriple {
            parent,
            basis,
            label: label.into(),
        })
    }

    pub fn parent(&self) -> &SpaceRef {
        &self.parent
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    /// Lifts sub-coordinates to parent coordinates.
    pub fn embed(&self, x: &CVec) -> CVec {
        &self.basis * x
    }

    /// Projects parent coordinates onto the sub-basis (adjoint of embed).
    pub fn restrict(&self, x: &CVec) -> CVec {
        self.basis.adjoint() * x
    }

    /// Lifts an element of the subtriple to the parent space.
    pub fn lift(&self, e: &Element) -> Element {
        Element::new(self.parent.clone(), self.embed(e.coords()))
    }

    /// How far `x` (parent coordinates) is from the span.
    pub fn defect(&self, x: &CVec) -> f64 {
        let projected = self.embed(&self.restrict(x));
        vec_norm(&(x - projected)) / crate::tol::unit_scale(vec_norm(x), 0.0)
    }
}

impl TripleSpace for SubTriple {
    fn dim(&self) -> usize {
        self.basis.ncols()
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        let t = self
            .parent
            .triple(&self.embed(x), &self.embed(y), &self.embed(z));
        self.restrict(&t)
    }

    fn norm(&self, x: &CVec) -> Option<f64> {
        self.parent.norm(&self.embed(x))
    }
}

/// ℓ∞-direct sum of triple spaces: the triple product acts coordinatewise
/// and the norm is the maximum of the component norms.
pub struct DirectSum {
    parts: Vec<SpaceRef>,
    offsets: Vec<usize>,
    dim: usize,
}

impl DirectSum {
    pub fn new(parts: Vec<SpaceRef>) -> Arc<DirectSum> {
        assert!(!parts.is_empty(), "direct sum of no spaces");
        let mut offsets = Vec::with_capacity(parts.len());
        let mut dim = 0;
        for p in &parts {
            offsets.push(dim);
            dim += p.dim();
        }
        Arc::new(DirectSum { parts, offsets, dim })
    }

    pub fn parts(&self) -> &[SpaceRef] {
        &self.parts
    }

    /// Splits sum coordinates into the component coordinate vectors.
    pub fn split(&self, x: &CVec) -> Vec<CVec> {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, p)| x.rows(self.offsets[i], p.dim()).into_owned())
            .collect()
    }

    /// Rebuilds sum coordinates from components.
    pub fn join(&self, comps: &[CVec]) -> CVec {
        assert_eq!(comps.len(), self.parts.len());
        let mut out = CVec::zeros(self.dim);
        for (i, c) in comps.iter().enumerate() {
            assert_eq!(c.len(), self.parts[i].dim());
            out.rows_mut(self.offsets[i], c.len()).copy_from(c);
        }
        out
    }

    /// Component elements of a sum element.
    pub fn components(&self, e: &Element) -> Vec<Element> {
        self.split(e.coords())
            .into_iter()
            .zip(self.parts.iter())
            .map(|(c, p)| Element::new(p.clone(), c))
            .collect()
    }
}

impl TripleSpace for DirectSum {
    fn dim(&self) -> usize {
        self.dim
    }

    fn label(&self) -> String {
        let inner: Vec<String> = self.parts.iter().map(|p| p.label()).collect();
        format!("sum({})", inner.join(", "))
    }

    fn triple(&self, x: &CVec, y: &CVec, z: &CVec) -> CVec {
        let (xs, ys, zs) = (self.split(x), self.split(y), self.split(z));
        let comps: Vec<CVec> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| p.triple(&xs[i], &ys[i], &zs[i]))
            .collect();
        self.join(&comps)
    }

    fn norm(&self, x: &CVec) -> Option<f64> {
        let xs = self.split(x);
        let mut best = 0.0_f64;
        for (p, c) in self.parts.iter().zip(xs.iter()) {
            best = best.max(p.norm(c)?);
        }
        Some(best)
    }

    fn make_tripotent(
        &self,
        req: TripotentRequest,
        rng: &mut ChaCha8Rng,
    ) -> Result<CVec, Error> {
        // Componentwise: a sum element is a tripotent exactly when every
        // component is one.
        let comps: Result<Vec<CVec>, Error> = self
            .parts
            .iter()
            .map(|p| p.make_tripotent(req, rng))
            .collect();
        Ok(self.join(&comps?))
    }
}

/// Convenience: direct sum as a trait object.
pub fn direct_sum(parts: Vec<SpaceRef>) -> SpaceRef {
    DirectSum::new(parts)
}

/// Validation report for the triple-space axioms (sampled).
#[derive(Debug, Clone)]
pub struct SpaceValidation {
    pub samples: usize,
    /// max residual of the Jordan identity
    pub jordan: f64,
    /// max residual of outer symmetry {x,y,z} = {z,y,x}
    pub outer_symmetry: f64,
    /// max residual of conjugate-linearity in the middle slot
    pub middle_conjugate_linearity: f64,
    /// max residual of bilinearity in the outer slots
    pub outer_linearity: f64,
}

impl SpaceValidation {
    pub fn worst(&self) -> f64 {
        self.jordan
            .max(self.outer_symmetry)
            .max(self.middle_conjugate_linearity)
            .max(self.outer_linearity)
    }
}

/// Samples the defining algebraic identities of a JB*-triple on random
/// elements and reports worst-case residuals (all at unit scale).
pub fn validate_space(space: &SpaceRef, samples: usize, rng: &mut ChaCha8Rng) -> SpaceValidation {
    use crate::linalg::{random_complex, rel_vec_resid};
    let mut out = SpaceValidation {
        samples,
        jordan: 0.0,
        outer_symmetry: 0.0,
        middle_conjugate_linearity: 0.0,
        outer_linearity: 0.0,
    };
    for _ in 0..samples {
        let draw = |rng: &mut ChaCha8Rng| {
            let mut v = random_cvec(space.dim(), rng);
            let n = vec_norm(&v);
            if n > 0.0 {
                v /= crate::linalg::cr(n);
            }
            v
        };
        let (x, y, a, b, c) = (draw(rng), draw(rng), draw(rng), draw(rng), draw(rng));

        // Jordan identity:
        // {x,y,{a,b,c}} = {{x,y,a},b,c} - {a,{y,x,b},c} + {a,b,{x,y,c}}
        let lhs = space.triple(&x, &y, &space.triple(&a, &b, &c));
        let rhs = space.triple(&space.triple(&x, &y, &a), &b, &c)
            - space.triple(&a, &space.triple(&y, &x, &b), &c)
            + space.triple(&a, &b, &space.triple(&x, &y, &c));
        out.jordan = out.jordan.max(rel_vec_resid(&lhs, &rhs));

        // outer symmetry
        let s1 = space.triple(&x, &y, &a);
        let s2 = space.triple(&a, &y, &x);
        out.outer_symmetry = out.outer_symmetry.max(rel_vec_resid(&s1, &s2));

        // conjugate-linearity in the middle slot
        let lam = random_complex(rng);
        let m1 = space.triple(&x, &y.map(|z| z * lam), &a);
        let m2 = space.triple(&x, &y, &a).map(|z| z * lam.conj());
        out.middle_conjugate_linearity = out
            .middle_conjugate_linearity
            .max(rel_vec_resid(&m1, &m2));

        // additive + homogeneous in an outer slot
        let mu = random_complex(rng);
        let l1 = space.triple(&(x.map(|z| z * mu) + &b), &y, &a);
        let l2 = space.triple(&x, &y, &a).map(|z| z * mu) + space.triple(&b, &y, &a);
        out.outer_linearity = out.outer_linearity.max(rel_vec_resid(&l1, &l2));
    }
    out
}
