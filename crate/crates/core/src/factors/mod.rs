//! Concrete Cartan factors at finite dimension and the associated
//! partial-isometry calculus.

pub mod isometry;
pub mod matrix;
pub mod spin;

use std::str::FromStr;
use std::sync::Arc;

use crate::space::SpaceRef;
use crate::Error;

pub use isometry::{
    antisym_le0, antisym_unitary, mvn_equivalent, projection_leq, symmetric_construct_tripotent,
    vn_leq2, vn_order, PartialIsometry,
};
pub use matrix::{MatrixFactor, MatrixKind};
pub use spin::{classify_spin_tripotent, SpinFactor, SpinTripotentKind};

/// All factor families the workbench can build, in a form suitable for
/// command-line parsing and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// `m×n` complex matrices.
    Rectangular(usize, usize),
    /// symmetric `n×n` complex matrices (transpose w.r.t. the canonical basis)
    Symmetric(usize),
    /// antisymmetric `n×n` complex matrices
    Antisymmetric(usize),
    /// spin factor of dimension `n`
    Spin(usize),
    /// Cayley-Dickson doubling level `0..=3` viewed as the spin factor of
    /// dimension `2^level`
    Cayley(usize),
    /// the 16-dimensional exceptional factor of octonion pairs
    C5,
    /// the 27-dimensional exceptional factor of hermitian 3×3 octonion
    /// matrices
    H3O,
}

impl FactorKind {
    /// Coordinate dimension of the factor.
    pub fn dim(&self) -> usize {
        match *self {
            FactorKind::Rectangular(m, n) => m * n,
            FactorKind::Symmetric(n) => n * (n + 1) / 2,
            FactorKind::Antisymmetric(n) => n * (n - 1) / 2,
            FactorKind::Spin(n) => n,
            FactorKind::Cayley(level) => 1 << level,
            FactorKind::C5 => 16,
            FactorKind::H3O => 27,
        }
    }

    /// Builds the factor as a triple space.
    pub fn build(&self) -> Result<SpaceRef, Error> {
        Ok(match *self {
            FactorKind::Rectangular(m, n) => {
                Arc::new(MatrixFactor::rectangular(m, n)?) as SpaceRef
            }
            FactorKind::Symmetric(n) => Arc::new(MatrixFactor::symmetric(n)?) as SpaceRef,
            FactorKind::Antisymmetric(n) => Arc::new(MatrixFactor::antisymmetric(n)?) as SpaceRef,
            FactorKind::Spin(n) => Arc::new(SpinFactor::new(n)?) as SpaceRef,
            FactorKind::Cayley(level) => {
                Arc::new(crate::cayley::cayley_spin_space(level)?) as SpaceRef
            }
            FactorKind::C5 => Arc::new(crate::exceptional::C5Factor::new()) as SpaceRef,
            FactorKind::H3O => Arc::new(crate::exceptional::H3OFactor::new()) as SpaceRef,
        })
    }

    /// Stable textual form, e.g. `rect:2x3`, `spin:8`, `c5`.
    pub fn as_str(&self) -> String {
        match *self {
            FactorKind::Rectangular(m, n) => format!("rect:{m}x{n}"),
            FactorKind::Symmetric(n) => format!("sym:{n}"),
            FactorKind::Antisymmetric(n) => format!("antisym:{n}"),
            FactorKind::Spin(n) => format!("spin:{n}"),
            FactorKind::Cayley(level) => format!("cayley:{level}"),
            FactorKind::C5 => "c5".to_string(),
            FactorKind::H3O => "h3o".to_string(),
        }
    }
}

impl std::fmt::Display for FactorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl FromStr for FactorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::BadSize(format!("cannot parse factor '{s}'"));
        let parse_num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some((kind, size)) = s.split_once(':') {
            match kind {
                "rect" | "rectangular" => {
                    let (m, n) = size.split_once('x').ok_or_else(bad)?;
                    Ok(FactorKind::Rectangular(parse_num(m)?, parse_num(n)?))
                }
                "sym" | "symmetric" => Ok(FactorKind::Symmetric(parse_num(size)?)),
                "antisym" | "antisymmetric" => Ok(FactorKind::Antisymmetric(parse_num(size)?)),
                "spin" => Ok(FactorKind::Spin(parse_num(size)?)),
                "cayley" => Ok(FactorKind::Cayley(parse_num(size)?)),
                _ => Err(bad()),
            }
        } else {
            match s {
                "c5" => Ok(FactorKind::C5),
                "h3o" => Ok(FactorKind::H3O),
                _ => Err(bad()),
            }
        }
    }
}
