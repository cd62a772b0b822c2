use thiserror::Error;

use crate::board::HexCoord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid radius {0}")]
    InvalidRadius(i32),
    #[error("coordinate ({}, {}) is off the radius-{radius} board", .coord.q, .coord.s)]
    OffBoard { coord: HexCoord, radius: i32 },
    #[error("mosaic is not valid: {0}")]
    Invalid(String),
    #[error("odd number ({0}) of used interface connection points")]
    Parity(usize),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("arc has equal-size sides ({0} tiles each)")]
    AmbiguousSides(usize),
    #[error("run is not an overpass: {0}")]
    NotOverpass(String),
    #[error("cannot reroute strand: {0}")]
    Reroute(String),
    #[error("invalid flype site: {0}")]
    InvalidSite(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("layout error: {0}")]
    Layout(String),
}

pub type Result<T> = std::result::Result<T, Error>;
