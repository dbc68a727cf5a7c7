//! ISU-TAS tile files (`TILENAME ... CREATE` records) and seed files
//! (`name x y` per line).

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use tilecheck_core::tile::MAX_STRENGTH;
use tilecheck_core::{Glue, ModelError, Side, TileAssemblySystem, TileType};

use super::diag::{lines, split_key, Diagnostic, ParseDiagnostics};

/// One `TILENAME ... CREATE` block as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileRecord {
    pub name: String,
    /// The cosmetic `LABEL`; never used for binding.
    pub label: Option<String>,
    /// Bind strengths in `[north, east, south, west]` order.
    pub binds: [u8; 4],
    /// Side labels in `[north, east, south, west]` order.
    pub labels: [String; 4],
    /// Line of the `TILENAME` key.
    pub line: usize,
}

impl TileRecord {
    pub fn tile_type(&self) -> Result<TileType, ModelError> {
        let glue = |i: usize| Glue::new(self.labels[i].clone(), u32::from(self.binds[i]));
        let t = TileType::new(self.name.clone(), [glue(0)?, glue(1)?, glue(2)?, glue(3)?])?;
        Ok(match &self.label {
            Some(l) => t.with_display_label(l.clone()),
            None => t,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TilesetDocument {
    pub records: Vec<TileRecord>,
    pub warnings: Vec<Diagnostic>,
}

const BIND_KEYS: [&str; 4] = ["NORTHBIND", "EASTBIND", "SOUTHBIND", "WESTBIND"];
const LABEL_KEYS: [&str; 4] = ["NORTHLABEL", "EASTLABEL", "SOUTHLABEL", "WESTLABEL"];

struct Open {
    record: TileRecord,
    seen: HashSet<String>,
}

/// Parses a tile file. Input need not be valid UTF-8; invalid sequences are
/// replaced before parsing.
pub fn parse_tileset(bytes: &[u8]) -> Result<TilesetDocument, ParseDiagnostics> {
    let text = String::from_utf8_lossy(bytes);
    let mut doc = TilesetDocument::default();
    let mut errors = Vec::new();
    let mut open: Option<Open> = None;
    let mut names: HashMap<String, usize> = HashMap::new();

    for (ln, line) in lines(&text) {
        let Some((key, key_col, value, value_col)) = split_key(line) else {
            continue;
        };
        if key == "TILENAME" {
            if let Some(prev) = open.take() {
                errors.push(Diagnostic::error(
                    prev.record.line,
                    1,
                    format!("missing CREATE for tile {:?}", prev.record.name),
                ));
            }
            if value.is_empty() {
                errors.push(Diagnostic::error(ln, key_col, "empty tile name"));
            } else if let Some(first) = names.get(value) {
                errors.push(Diagnostic::error(
                    ln,
                    value_col,
                    format!("duplicate tile name {value:?} (first defined on line {first})"),
                ));
            } else {
                names.insert(value.to_string(), ln);
            }
            open = Some(Open {
                record: TileRecord {
                    name: value.to_string(),
                    label: None,
                    binds: [0; 4],
                    labels: Default::default(),
                    line: ln,
                },
                seen: HashSet::new(),
            });
            continue;
        }
        let Some(cur) = open.as_mut() else {
            errors.push(Diagnostic::error(
                ln,
                key_col,
                format!("missing TILENAME before {key}"),
            ));
            continue;
        };
        if key == "CREATE" {
            let done = open.take().expect("record is open");
            doc.records.push(done.record);
            continue;
        }
        if !cur.seen.insert(key.to_string()) {
            doc.warnings.push(Diagnostic::warning(
                ln,
                key_col,
                format!("{key} repeated; the last value wins"),
            ));
        }
        if key == "LABEL" {
            cur.record.label = (!value.is_empty()).then(|| value.to_string());
        } else if let Some(i) = BIND_KEYS.iter().position(|&k| k == key) {
            match value.parse::<i64>() {
                Ok(v) if (0..=i64::from(MAX_STRENGTH)).contains(&v) => cur.record.binds[i] = v as u8,
                Ok(_) => errors.push(Diagnostic::error(
                    ln,
                    value_col,
                    "bind strength out of range {0,1,2}",
                )),
                Err(_) => errors.push(Diagnostic::error(
                    ln,
                    value_col,
                    format!("bind strength must be an integer, got {value:?}"),
                )),
            }
        } else if let Some(i) = LABEL_KEYS.iter().position(|&k| k == key) {
            cur.record.labels[i] = value.to_string();
        } else {
            doc.warnings.push(Diagnostic::warning(
                ln,
                key_col,
                format!("unknown key {key} ignored"),
            ));
        }
    }
    if let Some(prev) = open {
        errors.push(Diagnostic::error(
            prev.record.line,
            1,
            format!("missing CREATE for tile {:?}", prev.record.name),
        ));
    }
    if errors.is_empty() {
        Ok(doc)
    } else {
        errors.sort_by_key(|d| (d.line, d.column));
        Err(ParseDiagnostics {
            diagnostics: errors,
        })
    }
}

/// Writes the tile types of `sys` as ISU-TAS records, in tile order.
pub fn write_tileset(sys: &TileAssemblySystem) -> String {
    let mut out = String::new();
    for t in sys.tiles() {
        writeln!(out, "TILENAME {}", t.name()).unwrap();
        match t.display_label() {
            Some(l) if !l.is_empty() => writeln!(out, "LABEL {l}").unwrap(),
            _ => out.push_str("LABEL\n"),
        }
        for (side, key) in Side::ALL.iter().zip(BIND_KEYS) {
            writeln!(out, "{key} {}", t.glue(*side).strength()).unwrap();
        }
        for (side, key) in Side::ALL.iter().zip(LABEL_KEYS) {
            let l = t.glue(*side).label();
            if l.is_empty() {
                writeln!(out, "{key}").unwrap();
            } else {
                writeln!(out, "{key} {l}").unwrap();
            }
        }
        out.push_str("CREATE\n");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedEntry {
    pub name: String,
    pub x: u64,
    pub y: u64,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeedDocument {
    pub entries: Vec<SeedEntry>,
}

/// Parses a seed file: one `name x y` per line, `#` starts a comment. The
/// last two words are the coordinates; everything before them is the name.
pub fn parse_seed(bytes: &[u8]) -> Result<SeedDocument, ParseDiagnostics> {
    let text = String::from_utf8_lossy(bytes);
    let mut doc = SeedDocument::default();
    let mut errors = Vec::new();
    let mut at: HashMap<(u64, u64), usize> = HashMap::new();
    for (ln, raw) in lines(&text) {
        let line = raw.split('#').next().unwrap_or("");
        let words = words(line);
        if words.is_empty() {
            continue;
        }
        if words.len() < 3 {
            errors.push(Diagnostic::error(
                ln,
                words[0].0,
                "expected `<tile name> <x> <y>`",
            ));
            continue;
        }
        let k = words.len();
        let mut coord = |(col, w, _): (usize, &str, usize)| match w.parse::<u64>() {
            Ok(v) => Some(v),
            Err(_) => {
                errors.push(Diagnostic::error(
                    ln,
                    col,
                    format!("coordinate must be a non-negative integer, got {w:?}"),
                ));
                None
            }
        };
        let (x, y) = (coord(words[k - 2]), coord(words[k - 1]));
        let (Some(x), Some(y)) = (x, y) else { continue };
        let name = line[words[0].2..words[k - 2].2].trim_end().to_string();
        if let Some(first) = at.insert((x, y), ln) {
            errors.push(Diagnostic::error(
                ln,
                words[k - 2].0,
                format!("duplicate location ({x},{y}) (first on line {first})"),
            ));
            continue;
        }
        doc.entries.push(SeedEntry { name, x, y, line: ln });
    }
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(ParseDiagnostics {
            diagnostics: errors,
        })
    }
}

/// Whitespace-separated words with their 1-based column and byte offset.
fn words(line: &str) -> Vec<(usize, &str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain([(line.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i], s));
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub fn write_seed(sys: &TileAssemblySystem) -> String {
    let mut out = String::new();
    for p in sys.seed().placements() {
        writeln!(out, "{} {} {}", sys.name(p.tile), p.loc.x, p.loc.y).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElaborateError {
    #[error("line {line}: seed names unknown tile {name:?}")]
    UnknownTile { name: String, line: usize },
    #[error("line {line}: {source}")]
    Tile { line: usize, source: ModelError },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Resolves the seed against the tile types and builds the system at
/// temperature 2 with the diagonal glue relation.
pub fn elaborate(
    tileset: &TilesetDocument,
    seed: &SeedDocument,
) -> Result<TileAssemblySystem, ElaborateError> {
    let mut tiles = Vec::with_capacity(tileset.records.len());
    for r in &tileset.records {
        tiles.push(
            r.tile_type()
                .map_err(|source| ElaborateError::Tile { line: r.line, source })?,
        );
    }
    let known: HashSet<&str> = tileset.records.iter().map(|r| r.name.as_str()).collect();
    if let Some(e) = seed.entries.iter().find(|e| !known.contains(e.name.as_str())) {
        return Err(ElaborateError::UnknownTile {
            name: e.name.clone(),
            line: e.line,
        });
    }
    let mut b = TileAssemblySystem::builder().tiles(tiles);
    for e in &seed.entries {
        let coord = |v: u64| i64::try_from(v).unwrap_or(i64::MAX);
        b = b.seed_tile(e.name.clone(), coord(e.x), coord(e.y));
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tilecheck_core::catalog;

    const ONE_PLUS_ONE: &str = "TILENAME 1+1\nLABEL\nNORTHBIND 1\nEASTBIND 1\nSOUTHBIND 1\nWESTBIND 1\nNORTHLABEL 0\nEASTLABEL 0\nSOUTHLABEL 1\nWESTLABEL 1\nCREATE\n";

    fn errs(src: &str) -> Vec<Diagnostic> {
        parse_tileset(src.as_bytes()).unwrap_err().diagnostics
    }

    #[test]
    fn tile_record() {
        let doc = parse_tileset(ONE_PLUS_ONE.as_bytes()).unwrap();
        assert_eq!(doc.records.len(), 1);
        let r = &doc.records[0];
        assert_eq!(r.name, "1+1");
        assert_eq!(r.label, None);
        assert_eq!(r.binds, [1, 1, 1, 1]);
        assert_eq!(r.labels, ["0", "0", "1", "1"]);
        assert!(doc.warnings.is_empty());
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_tileset(b"").unwrap().records.len(), 0);
        assert_eq!(parse_seed(b"\n# nothing\n").unwrap().entries.len(), 0);
    }

    #[test]
    fn defaults_and_warnings() {
        let doc = parse_tileset(b"TILENAME a\r\nNORTHBIND 2\r\nCOLOR red\r\nCREATE\r\n").unwrap();
        let r = &doc.records[0];
        assert_eq!(r.binds, [2, 0, 0, 0]);
        assert_eq!(r.labels, ["", "", "", ""]);
        assert_eq!(doc.warnings.len(), 1);
        assert_eq!((doc.warnings[0].line, doc.warnings[0].column), (3, 1));
    }

    #[test]
    fn diagnostics() {
        let e = errs("TILENAME a\nNORTHBIND 3\nCREATE\n");
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].line, e[0].column), (2, 11));
        assert_eq!(e[0].message, "bind strength out of range {0,1,2}");

        let e = errs("TILENAME a\nEASTBIND x\nCREATE\n");
        assert_eq!((e[0].line, e[0].column), (2, 10));

        let e = errs("NORTHBIND 1\n");
        assert!(e[0].message.contains("missing TILENAME"));

        let e = errs("TILENAME a\nNORTHBIND 1\n");
        assert_eq!(e[0].line, 1);
        assert!(e[0].message.contains("missing CREATE"));

        let e = errs("TILENAME a\nTILENAME b\nCREATE\n");
        assert!(e[0].message.contains("missing CREATE"));

        let e = errs("TILENAME a\nCREATE\nTILENAME a\nCREATE\n");
        assert_eq!(e[0].line, 3);
        assert!(e[0].message.contains("duplicate tile name"));
    }

    #[test]
    fn seeds() {
        let d = parse_seed(b"S 0 0").unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!((d.entries[0].name.as_str(), d.entries[0].x, d.entries[0].y), ("S", 0, 0));
        let d = parse_seed(b"A 0 0\nB 1 0\n").unwrap();
        assert_eq!(d.entries.len(), 2);
        let e = parse_seed(b"S 0 0\nS 0 0").unwrap_err();
        assert_eq!(e.diagnostics[0].line, 2);
        assert!(e.diagnostics[0].message.starts_with("duplicate location (0,0)"));
        assert!(parse_seed(b"S 0\n").is_err());
        assert!(parse_seed(b"S -1 0\n").is_err());
        let d = parse_seed(b"  two words 3 4 # c\n").unwrap();
        assert_eq!(d.entries[0].name, "two words");
    }

    #[test]
    fn elaboration() {
        let sys = catalog::sierpinski();
        let ts = parse_tileset(write_tileset(&sys).as_bytes()).unwrap();
        let seed = parse_seed(b"seed 0 0").unwrap();
        let got = elaborate(&ts, &seed).unwrap();
        assert_eq!(got.tile_count(), 7);
        assert_eq!(got, sys);

        let bad = parse_seed(b"Z 0 0").unwrap();
        assert!(matches!(elaborate(&ts, &bad), Err(ElaborateError::UnknownTile { line: 1, .. })));
        let apart = parse_seed(b"seed 0 0\nrow 2 0").unwrap();
        assert_eq!(
            elaborate(&ts, &apart),
            Err(ElaborateError::Model(ModelError::DisconnectedSeed))
        );
    }

    #[test]
    fn round_trip_catalog() {
        for sys in [
            catalog::sierpinski(),
            catalog::pascal_mod3(),
            catalog::ambiguous_sierpinski(),
            catalog::truncated_sierpinski(),
            catalog::hook(),
            catalog::overbinding(),
        ] {
            let ts = parse_tileset(write_tileset(&sys).as_bytes()).unwrap();
            let seed = parse_seed(write_seed(&sys).as_bytes()).unwrap();
            assert_eq!(elaborate(&ts, &seed).unwrap(), sys);
        }
    }
}
