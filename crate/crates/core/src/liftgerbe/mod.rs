//! Finite groups, central extensions and the lifting obstruction of
//! transition cocycles.

mod extension;
mod finite_group;
mod obstruction;

pub use extension::{validate_extension, AbelianModel, CentralExtension, TransitionCocycle};
pub use finite_group::{FiniteGroup, DEFAULT_TABLE_BUDGET};
pub use obstruction::{
    brute_force_lift, lifting_obstruction, lifting_obstruction_with_section, random_section,
    section_independence, LiftSearch, Obstruction, DEFAULT_LIFT_BUDGET,
};
