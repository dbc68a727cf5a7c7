//! Line-oriented structured output.
//!
//! ```text
//! tilecheck-report v1
//! command=verify
//! verdict=NonUniqueTerminal
//! trace witness-1
//! step 1: 0+0 @ (1,1)
//! end
//! ```
//!
//! Keys are unique and free of `=`; values run to the end of the line. A
//! trace block lists steps as tile name and location.

use std::fmt::{self, Write as _};

use tilecheck_core::{AssemblySequence, TileAssemblySystem};

pub const REPORT_HEADER: &str = "tilecheck-report v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub tile: String,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceBlock {
    pub label: String,
    pub steps: Vec<TraceStep>,
}

impl TraceBlock {
    pub fn from_sequence(label: impl Into<String>, sys: &TileAssemblySystem, seq: &AssemblySequence) -> Self {
        Self {
            label: label.into(),
            steps: seq
                .steps
                .iter()
                .map(|p| TraceStep {
                    tile: sys.name(p.tile).to_string(),
                    x: p.loc.x,
                    y: p.loc.y,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub traces: Vec<TraceBlock>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key`, replacing an earlier value.
    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        let value = value.to_string().replace(['\n', '\r'], " ");
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_string(), value)),
        }
        self
    }

    pub fn trace(&mut self, block: TraceBlock) -> &mut Self {
        self.traces.push(block);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{REPORT_HEADER}").unwrap();
        for (k, v) in &self.fields {
            writeln!(out, "{k}={v}").unwrap();
        }
        for t in &self.traces {
            writeln!(out, "trace {}", t.label).unwrap();
            for (i, s) in t.steps.iter().enumerate() {
                writeln!(out, "step {}: {} @ ({},{})", i + 1, s.tile, s.x, s.y).unwrap();
            }
            out.push_str("end\n");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

fn parse_step(line: &str, expected: usize) -> Option<TraceStep> {
    let rest = line.strip_prefix("step ")?;
    let (num, rest) = rest.split_once(": ")?;
    if num.parse::<usize>().ok()? != expected {
        return None;
    }
    let (tile, at) = rest.rsplit_once(" @ ")?;
    let (x, y) = at.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
    Some(TraceStep {
        tile: tile.to_string(),
        x: x.parse().ok()?,
        y: y.parse().ok()?,
    })
}

pub fn parse_report(text: &str) -> Result<Report, ReportParseError> {
    let err = |line: usize, m: &str| ReportParseError {
        line,
        message: m.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l == REPORT_HEADER => {}
        _ => return Err(err(1, "missing report header")),
    }
    let mut report = Report::new();
    let mut open: Option<TraceBlock> = None;
    for (ln, line) in lines {
        if let Some(block) = open.as_mut() {
            if line == "end" {
                report.traces.push(open.take().expect("open block"));
            } else {
                let step = parse_step(line, block.steps.len() + 1).ok_or_else(|| err(ln, "malformed trace step"))?;
                block.steps.push(step);
            }
        } else if let Some(label) = line.strip_prefix("trace ") {
            open = Some(TraceBlock {
                label: label.to_string(),
                steps: Vec::new(),
            });
        } else if let Some((k, v)) = line.split_once('=') {
            if report.get(k).is_some() {
                return Err(err(ln, "duplicate key"));
            }
            report.fields.push((k.to_string(), v.to_string()));
        } else {
            return Err(err(ln, "expected `key=value` or `trace <label>`"));
        }
    }
    if open.is_some() {
        return Err(err(text.lines().count(), "unterminated trace block"));
    }
    Ok(report)
}
