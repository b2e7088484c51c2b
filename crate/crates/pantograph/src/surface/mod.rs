//! The exact-topology engine: charts, curves, arrangements, flips and the
//! surgeries (smoothings, twists, half-twists) everything else is built on.

pub mod arrange;
pub mod chart;
pub mod charts;
pub mod complement;
pub mod curve;
pub mod flip;
pub mod ops;
pub mod word;

pub use chart::{Chart, EdgeId, Slot, Surface, VertexId};
pub use curve::Curve;
pub use ops::Multicurve;
