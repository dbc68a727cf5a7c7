//! Reading and writing tile assembly systems.

mod diag;
mod isu;
mod native;

pub use diag::{Diagnostic, ParseDiagnostics, Severity};
pub use isu::{
    elaborate, parse_seed, parse_tileset, write_seed, write_tileset, ElaborateError, SeedDocument,
    SeedEntry, TileRecord, TilesetDocument,
};
pub use native::{is_native, parse_native, write_native, NativeError, NATIVE_HEADER};
