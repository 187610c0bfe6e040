//! The unital JB*-algebra structure carried by the Peirce-2 space of a
//! tripotent: `x ∘ y = {x, e, y}` and `x* = {e, x, e}` with unit `e`.

use crate::engine::ops::require_tripotent;
use crate::space::{same_space, Element};
use crate::{error::Error, Tolerance};

/// Jordan product and involution at a fixed tripotent `e`.
///
/// The operations are defined on the whole coordinate space, but they are
/// algebra operations only on the Peirce-2 subspace of `e`, where `e` acts
/// as the unit.
pub struct JordanAt {
    e: Element,
}

impl JordanAt {
    pub fn new(e: Element, tol: &Tolerance) -> Result<JordanAt, Error> {
        require_tripotent(&e, tol)?;
        Ok(JordanAt { e })
    }

    /// The unit tripotent.
    pub fn unit(&self) -> &Element {
        &self.e
    }

    /// `x ∘ y = {x, e, y}`.
    pub fn product(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        same_space(x, &self.e)?;
        x.triple(&self.e, y)
    }

    /// `x* = {e, x, e}`.
    pub fn involution(&self, x: &Element) -> Result<Element, Error> {
        same_space(x, &self.e)?;
        self.e.triple(x, &self.e)
    }

    /// Squared element `x ∘ x`.
    pub fn square(&self, x: &Element) -> Result<Element, Error> {
        self.product(x, x)
    }
}
