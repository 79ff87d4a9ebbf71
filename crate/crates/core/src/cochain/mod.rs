//! Finite nerves, Čech and bar cochain complexes, and their cohomology.

mod bar;
mod cech;
mod complex;
pub mod fixtures;
mod simplicial;

pub use bar::{bar_complex, GroupAction, DEFAULT_BAR_BUDGET};
pub use cech::{cech_complex, CechComplex};
pub use complex::{Cochain, CochainComplex, Cohomology, CohomologyClass};
pub use simplicial::{build_complex_from_facets, suspension, SimplicialComplex};
