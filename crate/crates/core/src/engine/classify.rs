//! Classification flags of a tripotent: complete, unitary, minimal, abelian.

use rand_chacha::ChaCha8Rng;

use crate::engine::frame::peirce_frame;
use crate::engine::jordan::JordanAt;
use crate::linalg::{random_cvec, rel_vec_resid};
use crate::space::Element;
use crate::{error::Error, Tolerance};

/// A boolean decided by random sampling rather than proof.
#[derive(Debug, Clone, Copy)]
pub struct SampledFlag {
    pub value: bool,
    /// number of sampled instances
    pub samples: usize,
    /// worst residual observed over the samples
    pub max_residual: f64,
}

/// Flags of a tripotent.
#[derive(Debug, Clone)]
pub struct TripotentClass {
    /// `E₀(u) = {0}`
    pub complete: bool,
    /// `E₂(u)` is everything
    pub unitary: bool,
    /// `dim E₂(u) = 1` (zero tripotents are not minimal)
    pub minimal: bool,
    /// the Jordan algebra `E₂(u)` is associative and commutative
    /// (sampled verdict)
    pub abelian: SampledFlag,
    /// `(dim E2, dim E1, dim E0)`
    pub ranks: (usize, usize, usize),
}

/// Number of random triples used for the abelianness sampling.
pub const ABELIAN_SAMPLES: usize = 64;

/// Classifies a tripotent. The zero element counts as a tripotent with
/// `complete = minimal = false` and `E₀` the whole space.
pub fn classify_tripotent(
    u: &Element,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Result<TripotentClass, Error> {
    let frame = peirce_frame(u, tol)?;
    let (r2, r1, r0) = frame.ranks();
    let dim = u.space().dim();
    let complete = r0 == 0 && u.norm2() > tol.eq_tol;
    let unitary = r2 == dim;
    let minimal = r2 == 1;

    // Abelianness: sample commutativity and associativity of ∘_u on
    // elements of E2(u).
    let jordan = JordanAt::new(u.clone(), tol)?;
    let basis2 = frame.subspace(2).basis().clone();
    let k = basis2.ncols();
    let mut max_residual = 0.0_f64;
    let samples = ABELIAN_SAMPLES;
    if k > 0 {
        for _ in 0..samples {
            let draw = |rng: &mut ChaCha8Rng| {
                let c = random_cvec(k, rng);
                let mut v = &basis2 * c;
                let n = crate::linalg::vec_norm(&v);
                if n > 0.0 {
                    v /= crate::linalg::cr(n);
                }
                Element::new(u.space().clone(), v)
            };
            let (x, y, z) = (draw(rng), draw(rng), draw(rng));
            let xy = jordan.product(&x, &y)?;
            let yx = jordan.product(&y, &x)?;
            max_residual = max_residual.max(rel_vec_resid(xy.coords(), yx.coords()));
            let xy_z = jordan.product(&xy, &z)?;
            let yz = jordan.product(&y, &z)?;
            let x_yz = jordan.product(&x, &yz)?;
            max_residual = max_residual.max(rel_vec_resid(xy_z.coords(), x_yz.coords()));
        }
    }
    let abelian = SampledFlag {
        value: max_residual <= tol.eq_tol,
        samples,
        max_residual,
    };

    Ok(TripotentClass {
        complete,
        unitary,
        minimal,
        abelian,
        ranks: (r2, r1, r0),
    })
}
