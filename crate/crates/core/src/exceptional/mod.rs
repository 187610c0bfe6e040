//! The two exceptional Cartan factors: the 27-dimensional algebra of
//! hermitian 3×3 octonion matrices and the 16-dimensional factor of
//! octonion pairs.

pub mod c5;
pub mod h3o;

pub use c5::{
    c5_le0, c5_tripotent, C5Element, C5Factor, C5TripotentKind,
};
pub use h3o::{H3OElement, H3OFactor};
