//! Coefficient algebra and bound verification for the third Hankel
//! determinant `H₃(1)` of inverses of starlike functions of order 1/2.

pub mod bound_search;
pub mod caratheodory;
pub mod extremal;
pub mod functionals;
pub mod interval;
pub mod scalar;
pub mod series;
