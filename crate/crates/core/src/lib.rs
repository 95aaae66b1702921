//! Lagrange spectra of translation surfaces.
//!
//! Values `1/a(X)` are computed through Rauzy-Veech renormalization of
//! zippered rectangles, exactly for periodic (pseudo-Anosov) orbits, and
//! through continued fractions for square-tiled surfaces.

pub mod cfrac;
pub mod error;
pub mod iet;
pub mod num;
pub mod origami;
pub mod rauzy;
pub mod spectrum;
pub mod zippered;

pub use error::{Error, Result};
pub use iet::{Iet, Letter, PermutationPair, ReducedTriple, SingularityTable};
pub use num::{Precision, Real};
pub use origami::{Move, OrbitGraph, Origami};
pub use rauzy::{Arrow, ArrowKind, CocycleMatrix, RauzyClass, RauzyPath};
pub use spectrum::{PeriodicOrbit, PeriodicValue, SpectrumEstimate};
pub use zippered::{Period, PeriodKind, ZipperedDatum};
