//! The order relations on tripotents: the partial order `≤`, the preorders
//! `≤₂` and `≤₀`, orthogonality, and the derived equivalences `∼₂`, `∼₀`.

use std::fmt;
use std::str::FromStr;

use crate::engine::frame::frame_unchecked;
use crate::engine::ops::{is_tripotent, l_operator, require_tripotent};
use crate::linalg::{op_norm, rel_vec_resid, vec_norm};
use crate::space::{same_space, Element};
use crate::{error::Error, Tolerance};

/// Which relation to decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `u ≤ e`: `e − u` is a tripotent orthogonal to `u`.
    Leq,
    /// `u ≤₂ e`: `u ∈ E₂(e)`.
    Leq2,
    /// `u ≤₀ e`: `E₀(e) ⊆ E₀(u)`.
    Leq0,
    /// `u ⟂ e`: `L(e,u) = 0`.
    Perp,
    /// `u ∼₂ e`: mutual `≤₂`.
    Sim2,
    /// `u ∼₀ e`: mutual `≤₀`.
    Sim0,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] = [
        RelationKind::Leq,
        RelationKind::Leq2,
        RelationKind::Leq0,
        RelationKind::Perp,
        RelationKind::Sim2,
        RelationKind::Sim0,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelationKind::Leq => "leq",
            RelationKind::Leq2 => "leq2",
            RelationKind::Leq0 => "leq0",
            RelationKind::Perp => "perp",
            RelationKind::Sim2 => "sim2",
            RelationKind::Sim0 => "sim0",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leq" | "le" => Ok(RelationKind::Leq),
            "leq2" | "le2" => Ok(RelationKind::Leq2),
            "leq0" | "le0" => Ok(RelationKind::Leq0),
            "perp" | "orth" => Ok(RelationKind::Perp),
            "sim2" => Ok(RelationKind::Sim2),
            "sim0" => Ok(RelationKind::Sim0),
            other => Err(format!("unknown relation kind '{other}'")),
        }
    }
}

/// Outcome of a relation query.
#[derive(Debug, Clone)]
pub struct RelationVerdict {
    pub kind: RelationKind,
    pub holds: bool,
    /// Residual at unit scale; `holds` iff `residual ≤ eq_tol`.
    pub residual: f64,
    /// A violating vector when `holds` is false (when one is available).
    pub witness: Option<Element>,
}

/// Decides `relation(kind, u, e)`. Both arguments must be tripotents of
/// the same space.
///
/// Decision routes:
/// * `leq` — `‖{u,e,u} − u‖` as the primary test, cross-checked against
///   `P₂(u)e = u`; the reported residual is the worse of the two.
/// * `leq2` — `‖P₂(e)u − u‖`.
/// * `leq0` — inclusion of Peirce-0 subspaces `E₀(e) ⊆ E₀(u)`.
/// * `perp` — `‖L(e,u)‖`, cross-checked by `u ± e` being tripotents.
/// * `sim2` / `sim0` — two-sided queries.
pub fn relation(
    kind: RelationKind,
    u: &Element,
    e: &Element,
    tol: &Tolerance,
) -> Result<RelationVerdict, Error> {
    same_space(u, e)?;
    require_tripotent(u, tol)?;
    require_tripotent(e, tol)?;
    relation_unchecked(kind, u, e, tol)
}

pub(crate) fn relation_unchecked(
    kind: RelationKind,
    u: &Element,
    e: &Element,
    tol: &Tolerance,
) -> Result<RelationVerdict, Error> {
    match kind {
        RelationKind::Leq => {
            let ueu = u.triple(e, u)?;
            let r_primary = rel_vec_resid(ueu.coords(), u.coords());
            // Cross-check through the Peirce-2 projection of u applied to e.
            let frame = frame_unchecked(u, tol)?;
            let p2e = frame.project(2, e);
            let r_cross = rel_vec_resid(p2e.coords(), u.coords());
            let residual = r_primary.max(r_cross);
            let witness = if residual > tol.eq_tol {
                Some(ueu.sub(u)?)
            } else {
                None
            };
            Ok(RelationVerdict {
                kind,
                holds: residual <= tol.eq_tol,
                residual,
                witness,
            })
        }
        RelationKind::Leq2 => {
            let frame = frame_unchecked(e, tol)?;
            let p2u = frame.project(2, u);
            let residual = rel_vec_resid(p2u.coords(), u.coords());
            let witness = if residual > tol.eq_tol {
                Some(p2u.sub(u)?)
            } else {
                None
            };
            Ok(RelationVerdict {
                kind,
                holds: residual <= tol.eq_tol,
                residual,
                witness,
            })
        }
        RelationKind::Leq0 => {
            let frame_u = frame_unchecked(u, tol)?;
            let frame_e = frame_unchecked(e, tol)?;
            let e0e = frame_e.subspace(0);
            let e0u = frame_u.subspace(0);
            let residual = e0e.inclusion_residual(e0u)?;
            let holds = residual <= tol.eq_tol;
            let witness = if holds {
                None
            } else {
                // a vector of E0(e) escaping E0(u): pick the basis column of
                // E0(e) with the worst projection defect
                let mut best: Option<(f64, Element)> = None;
                let proj_u = e0u.projector();
                for j in 0..e0e.rank() {
                    let col = e0e.basis().column(j).into_owned();
                    let defect = vec_norm(&(&col - &proj_u * &col));
                    let cand = Element::new(u.space().clone(), col);
                    if best.as_ref().map_or(true, |(d, _)| defect > *d) {
                        best = Some((defect, cand));
                    }
                }
                best.map(|(_, w)| w)
            };
            Ok(RelationVerdict {
                kind,
                holds,
                residual,
                witness,
            })
        }
        RelationKind::Perp => {
            let l = l_operator(e, u)?;
            let scale = crate::tol::unit_scale(u.norm2(), e.norm2());
            let mut residual = op_norm(&l) / scale;
            // Cross-check: orthogonality is equivalent to both u+e and u−e
            // being tripotents.
            let plus = is_tripotent(&u.add(e)?, tol);
            let minus = is_tripotent(&u.sub(e)?, tol);
            residual = residual
                .max(plus.residual / scale)
                .max(minus.residual / scale);
            Ok(RelationVerdict {
                kind,
                holds: residual <= tol.eq_tol,
                residual,
                witness: None,
            })
        }
        RelationKind::Sim2 => {
            let a = relation_unchecked(RelationKind::Leq2, u, e, tol)?;
            let b = relation_unchecked(RelationKind::Leq2, e, u, tol)?;
            Ok(two_sided(RelationKind::Sim2, a, b))
        }
        RelationKind::Sim0 => {
            let a = relation_unchecked(RelationKind::Leq0, u, e, tol)?;
            let b = relation_unchecked(RelationKind::Leq0, e, u, tol)?;
            Ok(two_sided(RelationKind::Sim0, a, b))
        }
    }
}

fn two_sided(kind: RelationKind, a: RelationVerdict, b: RelationVerdict) -> RelationVerdict {
    let residual = a.residual.max(b.residual);
    let holds = a.holds && b.holds;
    let witness = if holds {
        None
    } else if !a.holds {
        a.witness
    } else {
        b.witness
    };
    RelationVerdict {
        kind,
        holds,
        residual,
        witness,
    }
}
