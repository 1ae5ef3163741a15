//! Topology-preserving off-screen visualization engine.
//!
//! Off-screen points of a scatterplot are compressed into a band along the
//! display edges. [`border`] sizes the band per side, [`projection`] maps
//! points into it (orthographic or radial) and back, [`extreme`] measures where
//! the two strategies disagree, [`scenario`] generates the user-study stimuli
//! and [`scagnostics`] quantifies how much each strategy distorts a dataset.

pub mod border;
pub mod extreme;
pub mod geometry;
pub mod projection;
pub mod rng;
pub mod scagnostics;
pub mod scenario;

pub use border::{compute_intrusion, BorderConfig, BorderIntrusion, BorderMode};
pub use geometry::{classify_region, Point, Rect, RegionTag, Scene, Side};
pub use projection::{ProjectedCue, ProjectionError, Projector, Strategy};
