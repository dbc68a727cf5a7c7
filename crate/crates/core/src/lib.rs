//! Core semantics and verification engines for the abstract tile assembly
//! model (aTAM) on bounded `n × n` surfaces.
//!
//! The crate is `no_std` and only needs an allocator. It contains:
//!
//! - [`tile`], [`system`], [`config`]: tile types, glue interaction and
//!   single-tile attachment at temperature 2, plus cut-stability.
//! - [`rules`]: minimal neighbour patterns that enable each tile type, shared
//!   by the CTL axiom generator and the Petri-net translation.
//! - [`transition`]: explicit construction of the canonical transition system
//!   of a tile assembly system, assembly sequences and terminality.
//! - [`ctl`]: CTL formulas, the formula families describing a system, and an
//!   explicit-state fixpoint model checker.
//! - [`verify`]: the partial-order-reduced verifier for rectilinear systems.
//! - [`counting`]: closed-form and enumerative configuration counts.
//! - [`petri`]: guarded Petri-net translation and token-game exploration.
//! - [`catalog`]: a handful of reference tile assembly systems.

#![no_std]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod catalog;
pub mod config;
pub mod counting;
pub mod ctl;
pub mod error;
pub mod petri;
pub mod rules;
pub mod stability;
pub mod system;
pub mod tile;
pub mod transition;
pub mod verify;

pub use config::{Configuration, Loc, Placement};
pub use error::{AttachError, ModelError};
pub use system::{SystemBuilder, TileAssemblySystem, TileId};
pub use tile::{interaction_strength, Glue, GlueRelation, Side, TileType};
pub use transition::{AssemblySequence, TransitionSystem};
