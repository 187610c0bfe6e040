//! Tolerance policy.
//!
//! Every approximate comparison in the crate goes through a [`Tolerance`].
//! Comparisons are absolute on data pre-normalized to unit scale: residuals
//! of the form `‖a − b‖` are divided by `max(1, ‖a‖, ‖b‖)` before they are
//! compared against `eq_tol`, so that factors carrying different norms
//! (operator, spin, Hilbert–Schmidt) are treated uniformly.

/// Numerical tolerances used by the whole workbench.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute tolerance for equality of unit-scale data.
    pub eq_tol: f64,
    /// Singular-value cutoff used for all rank decisions.
    pub rank_tol: f64,
    /// Maximal admissible distance of an eigenvalue of `L(u,u)` from the
    /// set `{0, 1/2, 1}`. Anything above this is a hard failure, not a
    /// rounding artifact.
    pub eig_cluster_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eq_tol: 1e-9,
            rank_tol: 1e-8,
            eig_cluster_tol: 1e-6,
        }
    }
}

impl Tolerance {
    /// Tolerance with a custom equality threshold, keeping the remaining
    /// fields at their defaults.
    pub fn with_eq_tol(eq_tol: f64) -> Self {
        Tolerance {
            eq_tol,
            ..Tolerance::default()
        }
    }

    /// Checks the invariants: all fields strictly positive, `eq_tol < 1`.
    pub fn validate(&self) -> bool {
        self.eq_tol > 0.0
            && self.eq_tol < 1.0
            && self.rank_tol > 0.0
            && self.eig_cluster_tol > 0.0
    }
}

/// Scale used to normalize residuals: `max(1, n1, n2)`.
pub fn unit_scale(n1: f64, n2: f64) -> f64 {
    1.0_f64.max(n1).max(n2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(Tolerance::default().validate());
        assert!(!Tolerance::with_eq_tol(0.0).validate());
        assert!(!Tolerance::with_eq_tol(2.0).validate());
    }
}
