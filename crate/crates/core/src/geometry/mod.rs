//! Charts and geometric predicates on them.

pub mod chart;
pub mod locus;
pub mod points;
pub mod singular;

pub use chart::{Chart, Divisor, Substitution};
pub use locus::{aligned_locus, AlignedComponent};
pub use points::rational_points;
pub use singular::{
    is_smooth, is_strictly_monomial_at, multiplicity_stratification, singular_locus, Smoothness, Stratification,
};
