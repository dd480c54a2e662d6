//! OpenStreetMap to hex-lattice abstraction.
//!
//! [`run_pipeline`] parses OSM XML, classifies features by tag, simplifies
//! them (Douglas-Peucker, then Chaikin), filters by relevance tier and area,
//! and replaces each survivor with a handful of lattice primitives. The
//! result is written as newline-delimited JSON ([`output`]) and can be
//! rendered to SVG ([`render`]).

pub mod classify;
pub mod filter;
pub mod model;
pub mod mosaic;
pub mod output;
pub mod parse;
pub mod pipeline;
pub mod project;
pub mod render;
pub mod simplify;

use thiserror::Error;

pub use classify::classify;
pub use filter::{filter_features, FilterStats};
pub use model::{
    BBox, Class, Classified, FeatureClass, FeatureKind, LonLat, RawFeature, ResolutionPolicy,
    Scale, Tier,
};
pub use mosaic::{fit_mosaic, MosaicObject, Op, Primitive, PrimitiveKind};
pub use output::{read_model, write_model, Model};
pub use parse::{parse_osm, ParseOutput, ParseWarnings};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutput, ReductionStats};
pub use project::{geo_to_hex, Grid};
pub use render::render_svg;
pub use simplify::{chaikin, douglas_peucker};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed OSM XML {0}")]
    XmlSyntax(String),
    #[error("no features inside the bounding box")]
    EmptyExtract,
    #[error("point ({lon}, {lat}) is too far from the grid origin")]
    OutOfGridRange { lon: f64, lat: f64 },
    #[error("invalid policy: {0}")]
    InvalidPolicy(String),
    #[error("invalid model: {0}")]
    Schema(String),
}
