//! Single-file description of a whole system, headed by `TASV1`.
//!
//! ```text
//! TASV1
//! temperature 2
//! relation diagonal          # or `relation explicit` followed by `pair` lines
//! pair "a" "b"
//! tile "name" 2 "n" 2 "e" 0 "" 0 "" label "shown"
//! seed "name" 0 0
//! ```
//!
//! Strings are double-quoted with `\"` and `\\` escapes. Glues are listed
//! north, east, south, west as strength then label.

use std::fmt::Write as _;

use tilecheck_core::{Glue, GlueRelation, ModelError, Side, TileAssemblySystem, TileType};

use super::diag::{lines, Diagnostic, ParseDiagnostics};

pub const NATIVE_HEADER: &str = "TASV1";

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn write_native(sys: &TileAssemblySystem) -> String {
    let mut out = String::new();
    writeln!(out, "{NATIVE_HEADER}").unwrap();
    writeln!(out, "temperature {}", sys.temperature()).unwrap();
    match sys.relation() {
        GlueRelation::Diagonal => out.push_str("relation diagonal\n"),
        GlueRelation::Explicit(pairs) => {
            out.push_str("relation explicit\n");
            for (a, b) in pairs.iter().filter(|(a, b)| a <= b) {
                writeln!(out, "pair {} {}", quote(a), quote(b)).unwrap();
            }
        }
    }
    for t in sys.tiles() {
        write!(out, "tile {}", quote(t.name())).unwrap();
        for side in Side::ALL {
            let g = t.glue(side);
            write!(out, " {} {}", g.strength(), quote(g.label())).unwrap();
        }
        if let Some(l) = t.display_label() {
            write!(out, " label {}", quote(l)).unwrap();
        }
        out.push('\n');
    }
    for p in sys.seed().placements() {
        writeln!(out, "seed {} {} {}", quote(sys.name(p.tile)), p.loc.x, p.loc.y).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Str(String),
}

fn tokenize(line: &str) -> Result<Vec<(usize, Token)>, (usize, String)> {
    let mut out = Vec::new();
    let mut chars = line.chars().enumerate().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let col = i + 1;
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    None => return Err((col, "unterminated string".into())),
                    Some((_, '"')) => break,
                    Some((j, '\\')) => match chars.next() {
                        Some((_, '"')) => s.push('"'),
                        Some((_, '\\')) => s.push('\\'),
                        Some((_, 'n')) => s.push('\n'),
                        Some((_, 'r')) => s.push('\r'),
                        _ => return Err((j + 1, "unknown escape".into())),
                    },
                    Some((_, c)) => s.push(c),
                }
            }
            out.push((col, Token::Str(s)));
        } else {
            let mut w = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == '"' {
                    break;
                }
                w.push(c);
                chars.next();
            }
            out.push((col, Token::Word(w)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NativeError {
    #[error("{0}")]
    Syntax(ParseDiagnostics),
    #[error(transparent)]
    Model(#[from] ModelError),
}

struct Cursor<'a> {
    line: usize,
    end_col: usize,
    toks: &'a [(usize, Token)],
    pos: usize,
}

impl Cursor<'_> {
    fn err(&self, msg: impl Into<String>) -> Diagnostic {
        let col = self.toks.get(self.pos).map_or(self.end_col, |t| t.0);
        Diagnostic::error(self.line, col, msg)
    }

    fn string(&mut self, what: &str) -> Result<String, Diagnostic> {
        match self.toks.get(self.pos) {
            Some((_, Token::Str(s))) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.err(format!("expected quoted {what}"))),
        }
    }

    fn word(&mut self) -> Option<&str> {
        match self.toks.get(self.pos) {
            Some((_, Token::Word(w))) => {
                self.pos += 1;
                Some(w)
            }
            _ => None,
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, Diagnostic> {
        let err = self.err(format!("expected {what}"));
        self.word().and_then(|w| w.parse().ok()).ok_or(err)
    }

    fn finish(&self) -> Result<(), Diagnostic> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_native(bytes: &[u8]) -> Result<TileAssemblySystem, NativeError> {
    let text = String::from_utf8_lossy(bytes);
    let mut errors = Vec::new();
    let mut temperature = 2;
    let mut explicit: Option<Vec<(String, String)>> = None;
    let mut tiles = Vec::new();
    let mut seed = Vec::new();
    let mut header = false;

    for (ln, line) in lines(&text) {
        let toks = match tokenize(line) {
            Ok(t) => t,
            Err((col, msg)) => {
                errors.push(Diagnostic::error(ln, col, msg));
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            line: ln,
            end_col: line.chars().count().max(1),
            toks: &toks,
            pos: 0,
        };
        let key = cur.word().map(str::to_string);
        if !header {
            if key.as_deref() == Some(NATIVE_HEADER) && toks.len() == 1 {
                header = true;
            } else {
                errors.push(Diagnostic::error(ln, 1, format!("expected `{NATIVE_HEADER}` header")));
                break;
            }
            continue;
        }
        let res: Result<(), Diagnostic> = (|| {
            match key.as_deref() {
                Some("temperature") => temperature = cur.number("temperature")?,
                Some("relation") => match cur.word() {
                    Some("diagonal") => explicit = None,
                    Some("explicit") => explicit = Some(Vec::new()),
                    _ => return Err(Diagnostic::error(ln, toks[0].0, "expected `diagonal` or `explicit`")),
                },
                Some("pair") => {
                    let a = cur.string("glue label")?;
                    let b = cur.string("glue label")?;
                    explicit
                        .as_mut()
                        .ok_or_else(|| Diagnostic::error(ln, 1, "`pair` needs `relation explicit` first"))?
                        .push((a, b));
                }
                Some("tile") => {
                    let name = cur.string("tile name")?;
                    let mut glues: [Glue; 4] = Default::default();
                    for g in &mut glues {
                        let col = cur.toks.get(cur.pos).map_or(cur.end_col, |t| t.0);
                        let s: u32 = cur.number("glue strength")?;
                        let label = cur.string("glue label")?;
                        *g = Glue::new(label, s).map_err(|e| Diagnostic::error(ln, col, e.to_string()))?;
                    }
                    let mut t = TileType::new(name, glues)
                        .map_err(|e| Diagnostic::error(ln, toks[1].0, e.to_string()))?;
                    if matches!(cur.toks.get(cur.pos), Some((_, Token::Word(w))) if w == "label") {
                        cur.pos += 1;
                        t = t.with_display_label(cur.string("label")?);
                    }
                    tiles.push(t);
                }
                Some("seed") => {
                    let name = cur.string("tile name")?;
                    let x: i64 = cur.number("x coordinate")?;
                    let y: i64 = cur.number("y coordinate")?;
                    seed.push((name, x, y));
                }
                _ => return Err(Diagnostic::error(ln, toks[0].0, "unknown directive")),
            }
            cur.finish()
        })();
        if let Err(d) = res {
            errors.push(d);
        }
    }
    if !header && errors.is_empty() {
        errors.push(Diagnostic::error(1, 1, format!("expected `{NATIVE_HEADER}` header")));
    }
    if !errors.is_empty() {
        return Err(NativeError::Syntax(ParseDiagnostics {
            diagnostics: errors,
        }));
    }
    let mut b = TileAssemblySystem::builder().tiles(tiles).temperature(temperature);
    if let Some(pairs) = explicit {
        b = b.relation(GlueRelation::explicit(pairs));
    }
    for (name, x, y) in seed {
        b = b.seed_tile(name, x, y);
    }
    Ok(b.build()?)
}

/// True when `bytes` starts with the native header line.
pub fn is_native(bytes: &[u8]) -> bool {
    let text = String::from_utf8_lossy(bytes);
    text.lines().find(|l| !l.trim().is_empty()).map(str::trim) == Some(NATIVE_HEADER)
}
