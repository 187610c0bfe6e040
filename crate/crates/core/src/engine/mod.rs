//! Factor-agnostic JB*-triple machinery: multiplication operators, Peirce
//! frames, tripotent predicates, the three preorders and the induced
//! Jordan-algebra structure at a tripotent.

mod classify;
mod extend;
mod frame;
mod jordan;
mod ops;
mod relation;

pub use classify::{classify_tripotent, SampledFlag, TripotentClass};
pub use extend::{
    extend_to_complete, is_finite_tripotent_sampled, random_tripotent, range_tripotent_approx,
    FiniteTrialLog,
};
pub use frame::{peirce_frame, PeirceFrame};
pub use jordan::JordanAt;
pub use ops::{is_tripotent, l_matrix, l_operator, q_matrix, q_operator, TripotentCheck};
pub use relation::{relation, RelationKind, RelationVerdict};
