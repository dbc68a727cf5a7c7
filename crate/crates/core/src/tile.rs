//! Glues, tile types and the glue interaction relation.

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use crate::error::ModelError;

/// Largest glue strength the model admits.
pub const MAX_STRENGTH: u8 = 2;

/// A side of a (non-rotatable) square tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    /// All sides in canonical order.
    pub const ALL: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];

    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::West => Side::East,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::North => "north",
            Side::East => "east",
            Side::South => "south",
            Side::West => "west",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A labelled glue with strength 0, 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Glue {
    label: String,
    strength: u8,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: u32) -> Result<Self, ModelError> {
        if strength > u32::from(MAX_STRENGTH) {
            return Err(ModelError::StrengthOutOfRange(strength));
        }
        Ok(Self {
            label: label.into(),
            strength: strength as u8,
        })
    }

    /// The inert glue: empty label, strength 0.
    pub fn null() -> Self {
        Self::default()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn strength(&self) -> u32 {
        u32::from(self.strength)
    }

    pub fn is_null(&self) -> bool {
        self.strength == 0
    }
}

/// A tile type: a unique name, an optional cosmetic label and one glue per side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileType {
    name: String,
    display_label: Option<String>,
    glues: [Glue; 4],
}

impl TileType {
    /// Creates a tile type; glues are given in `[north, east, south, west]` order.
    pub fn new(name: impl Into<String>, glues: [Glue; 4]) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::EmptyTileName);
        }
        Ok(Self {
            name,
            display_label: None,
            glues,
        })
    }

    pub fn with_display_label(mut self, label: impl Into<String>) -> Self {
        self.display_label = Some(label.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn display_label(&self) -> Option<&str> {
        self.display_label.as_deref()
    }

    pub fn glue(&self, side: Side) -> &Glue {
        &self.glues[side.index()]
    }

    pub fn glues(&self) -> &[Glue; 4] {
        &self.glues
    }
}

/// The symmetric relation saying which glue labels bind.
///
/// `Diagonal` is the convention of ISU-TAS tile files: two glues bind iff
/// they carry the same label and the same strength.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum GlueRelation {
    #[default]
    Diagonal,
    Explicit(BTreeSet<(String, String)>),
}

impl GlueRelation {
    /// Builds an explicit relation, adding the mirror of every pair.
    pub fn explicit<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            set.insert((b.clone(), a.clone()));
            set.insert((a, b));
        }
        GlueRelation::Explicit(set)
    }

    pub fn relates(&self, a: &str, b: &str) -> bool {
        match self {
            GlueRelation::Diagonal => a == b,
            GlueRelation::Explicit(pairs) => pairs.contains(&(String::from(a), String::from(b))),
        }
    }
}

/// Strength with which two facing glues bind under `rel`.
pub fn interaction_strength(a: &Glue, b: &Glue, rel: &GlueRelation) -> u32 {
    if a.is_null() || b.is_null() {
        return 0;
    }
    match rel {
        GlueRelation::Diagonal => {
            if a.label == b.label && a.strength == b.strength {
                a.strength()
            } else {
                0
            }
        }
        GlueRelation::Explicit(_) => {
            if rel.relates(&a.label, &b.label) {
                a.strength().min(b.strength())
            } else {
                0
            }
        }
    }
}
