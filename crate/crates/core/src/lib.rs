//! Hexagonal mosaic knot diagrams: tiles, mosaics, link diagrams, dual
//! graphs, flypes and the complement construction.

pub mod board;
pub mod error;
pub mod tiles;

pub use error::{Error, Result};
pub mod mosaic;
pub mod regions;
pub mod diagram;
pub mod pd;
pub mod families;
pub mod overpass;
pub mod canon;
pub mod dual;
pub mod complement;
pub mod corpus;
pub mod render;
pub mod verify;
