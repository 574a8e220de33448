//! Escape paths from star-shaped polygons: certificate paths, the logarithmic
//! spiral online strategy, lower-bound numerics, classical baselines and SVG
//! rendering.

pub mod baselines;
pub mod certificate;
pub mod error;
pub mod geometry;
pub mod lowerbound;
pub mod optimize;
pub mod oracle;
pub mod render;
pub mod spiral;

pub use error::{Error, Result};
pub use geometry::{Point, Polygon, RadialProfile};
