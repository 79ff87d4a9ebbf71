//! Exact Čech cohomology of finite nerves with finitely generated abelian
//! coefficients, connecting morphisms of short exact coefficient sequences,
//! iterated class families along chains of such sequences, lifting
//! obstructions of central extensions, and the spectral sequence of the
//! summand filtration on a direct-sum coefficient complex.
//!
//! All arithmetic is over arbitrary-precision integers.

pub mod abelian;
pub mod cochain;
mod error;
pub mod exactseq;
pub mod json;
pub mod liftgerbe;
pub mod spectral;
pub mod tower;

pub use abelian::{FgAbGroup, GroupElement, Homomorphism, IntMatrix};
pub use cochain::{CechComplex, Cochain, CochainComplex, CohomologyClass, SimplicialComplex};
pub use error::{Error, ErrorKind, Result};
pub use exactseq::{CechSequence, LongExactSequence, ShortExactSequence};
pub use liftgerbe::{CentralExtension, FiniteGroup, TransitionCocycle};
pub use spectral::{FilteredComplex, SpectralTerms};
pub use tower::{TowerClasses, TowerSpec};
