//! Abstract Tile Assembly Model workbench.
//!
//! Simulates two- and three-dimensional tile systems at any temperature,
//! splices assembly sequences along matching window movies, checks
//! block-rescaled simulation between systems, and builds a handful of
//! reference systems (a cooperative keystone system, 3D read/write bit
//! gadgets) together with the tile-set string encoding and layout arithmetic
//! used by a 3D simulator of 2D temperature-1 systems.

pub mod assembly;
pub mod encoding;
pub mod explore;
pub mod format;
pub mod gadgets;
pub mod geometry;
pub mod layout;
pub mod sequence;
pub mod simulation;
pub mod system;
pub mod systems;
pub mod tile;
pub mod windows;

pub use assembly::Assembly;
pub use explore::{explore, random_sequence, Exploration, Explored, Truncation};
pub use geometry::{Bounds, Dim, Direction, Pos};
pub use sequence::{
    attachment_strength, frontier, is_producible, is_terminal, is_valid_sequence, AssemblySequence,
    AttachError, Validity,
};
pub use system::{SystemError, TileSystem};
pub use tile::{Glue, TileId, TileType};
pub use encoding::{decode_tileset, encode_tileset, encoding_length, BindingRelation, EncodingMode};
pub use simulation::{check_simulates, BlockRepresentation, SimBound, SimReport, Verdict};
pub use windows::{splice, window_movie, MovieMatch, Window, WindowMovie};
