//! Skein elements of oriented crossingless smoothings, planar arc diagrams
//! acting on them, and the alternation properties they preserve.

pub mod generate;
pub mod laurent;
pub mod planar;
pub mod skein;
pub mod smoothing;
pub mod tangle;
pub mod verify;

pub use laurent::{LaurentError, LaurentPoly, ParityClass};
pub use skein::{AlternationFailure, CoherenceReport, SkeinElement, SkeinError};
pub use planar::{Disc, DiscSpec, Endpoint, PlanarArcDiagram, PlanarError};
pub use smoothing::{enumerate_smoothings, OrientedSmoothing, Rational, RegionSign, SmoothingError};
pub use tangle::{CrossingSign, TangleDiagram, TangleError};
