use alloc::string::String;

use thiserror::Error;

use crate::config::Loc;

/// Errors raised while constructing tiles, glues and tile assembly systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("glue strength {0} out of range {{0,1,2}}")]
    StrengthOutOfRange(u32),
    #[error("tile name must not be empty")]
    EmptyTileName,
    #[error("duplicate tile name {0:?}")]
    DuplicateTileName(String),
    #[error("system has no tile types")]
    EmptySystem,
    #[error("seed assembly is empty")]
    EmptySeed,
    #[error("seed names unknown tile {0:?}")]
    UnknownTile(String),
    #[error("seed places two tiles at {0}")]
    DuplicateSeedLocation(Loc),
    #[error("seed assembly is not 4-connected")]
    DisconnectedSeed,
    #[error("seed assembly is not stable at temperature {0}")]
    UnstableSeed(u32),
    #[error("temperature must be at least 1")]
    ZeroTemperature,
}

/// Errors raised by the attachment primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AttachError {
    #[error("location {0} is already occupied")]
    OccupiedLocation(Loc),
    #[error("location {loc} lies outside the {size}x{size} surface")]
    OutOfBounds { loc: Loc, size: usize },
}
