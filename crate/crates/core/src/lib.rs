//! Scale construction for slide-rule style instruments.
//!
//! Values are placed on a strip at `d = unit * zoom * f(x)` for a strictly
//! monotone distance function `f`. On top of that geometry this crate
//! provides legibility and alignment analysis, tick generation, SVG rendering
//! and hairline read-outs.

pub mod analysis;
pub mod api;
pub mod error;
pub mod function;
pub mod numeric;
pub mod registry;
pub mod render;
pub mod scale;
pub mod tickgen;

pub use error::{Error, RangeEnd, Result};
pub use function::{Domain, ScaleFunction};
pub use registry::{RegistryEntry, ScaleRef, ScaleRegistry};
pub use scale::{zoom_related, Orientation, Origin, ScaleSpec, ScaleSpecDoc};
