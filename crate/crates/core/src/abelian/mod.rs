//! Exact arithmetic for finitely generated abelian groups.

mod group;
mod hom;
mod lattice;
mod matrix;
mod snf;

pub use group::{FgAbGroup, GroupElement};
pub use hom::{hom_invariants, hom_validate, is_exact_at, solve_in_group, Exactness, HomInvariants, Homomorphism};
pub use lattice::{kernel_lattice, relation_columns, solve_modular, Lattice, Subquotient};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
