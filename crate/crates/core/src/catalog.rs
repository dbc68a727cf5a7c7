//! Reference tile assembly systems, all at temperature 2 with a single seed
//! tile at the origin.

use alloc::format;
use alloc::vec::Vec;

use crate::system::TileAssemblySystem;
use crate::tile::{Glue, TileType};

fn glue(label: &str, strength: u32) -> Glue {
    Glue::new(label, strength).expect("catalog strengths are valid")
}

fn tile(name: &str, n: Glue, e: Glue, s: Glue, w: Glue) -> TileType {
    TileType::new(name, [n, e, s, w]).expect("catalog names are nonempty")
}

fn null() -> Glue {
    Glue::null()
}

/// Counter-style XOR tiles: `w+s` reads `w` from the west and `s` from the
/// south (strength 1 each) and emits `(w+s) mod m` north and east.
fn rule_tiles(modulus: u32) -> Vec<TileType> {
    let mut out = Vec::new();
    for w in 0..modulus {
        for s in 0..modulus {
            let o = format!("{}", (w + s) % modulus);
            out.push(tile(
                &format!("{w}+{s}"),
                glue(&o, 1),
                glue(&o, 1),
                glue(&format!("{s}"), 1),
                glue(&format!("{w}"), 1),
            ));
        }
    }
    out
}

fn seed_tile() -> TileType {
    tile("seed", glue("v", 2), glue("h", 2), null(), null())
}

/// Boundary tile of the west column: strength-2 chain north, emits 1 east.
fn column_tile() -> TileType {
    tile("col", glue("v", 2), glue("1", 1), glue("v", 2), null())
}

/// Boundary tile of the south row: strength-2 chain east, emits 1 north.
fn row_tile() -> TileType {
    tile("row", glue("1", 1), glue("h", 2), null(), glue("h", 2))
}

fn assemble(tiles: Vec<TileType>) -> TileAssemblySystem {
    TileAssemblySystem::builder()
        .tiles(tiles)
        .seed_tile("seed", 0, 0)
        .build()
        .expect("catalog systems are valid")
}

/// The seven-tile discrete Sierpinski triangle (XOR) system.
///
/// Tile order: `seed`, `0+0`, `0+1`, `1+0`, `1+1`, `col`, `row`.
pub fn sierpinski() -> TileAssemblySystem {
    let mut tiles = alloc::vec![seed_tile()];
    tiles.extend(rule_tiles(2));
    tiles.push(column_tile());
    tiles.push(row_tile());
    assemble(tiles)
}

/// Pascal's triangle modulo 3 (a carpet-style rectilinear counter), 12 tiles.
pub fn pascal_mod3() -> TileAssemblySystem {
    let mut tiles = alloc::vec![seed_tile()];
    tiles.extend(rule_tiles(3));
    tiles.push(column_tile());
    tiles.push(row_tile());
    assemble(tiles)
}

/// Sierpinski plus `1+1*`, which shares the west/south glues of `1+1` but
/// emits the wrong bit. Has two terminal assemblies on every surface n ≥ 2.
pub fn ambiguous_sierpinski() -> TileAssemblySystem {
    let mut tiles = sierpinski().tiles().to_vec();
    tiles.push(tile("1+1*", glue("1", 1), glue("1", 1), glue("1", 1), glue("1", 1)));
    assemble(tiles)
}

/// Sierpinski without `1+1`: growth stops wherever both inputs are 1, so the
/// terminal assembly does not fill the surface.
pub fn truncated_sierpinski() -> TileAssemblySystem {
    let tiles = sierpinski()
        .tiles()
        .iter()
        .filter(|t| t.name() != "1+1")
        .cloned()
        .collect();
    assemble(tiles)
}

/// Four tiles that grow north, then east, then back south: `hang` binds below
/// `arm` through its north side.
pub fn hook() -> TileAssemblySystem {
    assemble(alloc::vec![
        tile("seed", glue("v", 2), null(), null(), null()),
        tile("post", null(), glue("b", 2), glue("v", 2), null()),
        tile("arm", null(), null(), glue("c", 2), glue("b", 2)),
        tile("hang", glue("c", 2), null(), null(), null()),
    ])
}

/// A corner tile that binds with strength 3 (2 from the west, 1 from the
/// south). Its west input comes from a strength-2 east glue at y = 1.
pub fn overbinding() -> TileAssemblySystem {
    assemble(alloc::vec![
        seed_tile(),
        tile("col", null(), glue("p", 2), glue("v", 2), null()),
        tile("row", glue("q", 1), null(), null(), glue("h", 2)),
        tile("corner", null(), null(), glue("q", 1), glue("p", 2)),
    ])
}
