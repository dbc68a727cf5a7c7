//! Minimal enabling neighbour patterns.
//!
//! A pattern for tile `z` is a set of `(side, neighbour tile)` inputs, each
//! contributing positive strength to `z`, whose total reaches the temperature
//! while no proper subset does. `z` can attach at an empty location exactly
//! when one of its patterns is present around it, so the patterns form a
//! DNF for the attachment predicate. The table is location-independent;
//! locations on the surface boundary just drop patterns that reach off it.

use alloc::vec::Vec;

use crate::config::{Configuration, Loc};
use crate::system::{TileAssemblySystem, TileId};
use crate::tile::Side;

/// Bit set of sides, bit `i` for `Side::ALL[i]`.
pub type SideMask = u8;

pub const ALL_SIDES: SideMask = 0b1111;

/// Sides of `loc` that have a neighbour on the `size × size` surface.
pub fn side_mask(loc: Loc, size: usize) -> SideMask {
    Side::ALL
        .iter()
        .filter(|s| loc.neighbor(**s, size).is_some())
        .fold(0, |m, s| m | (1 << s.index()))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    inputs: Vec<(Side, TileId)>,
}

impl Pattern {
    /// Inputs in side order.
    pub fn inputs(&self) -> &[(Side, TileId)] {
        &self.inputs
    }

    pub fn sides(&self) -> SideMask {
        self.inputs.iter().fold(0, |m, (s, _)| m | (1 << s.index()))
    }

    /// Whether every input is present around `loc` in `c`.
    pub fn present(&self, loc: Loc, c: &Configuration) -> bool {
        self.inputs.iter().all(|&(side, t)| {
            loc.neighbor(side, c.size())
                .is_some_and(|nb| c.get(nb) == Some(t))
        })
    }
}

/// Patterns for every tile type of a system.
#[derive(Debug, Clone)]
pub struct RuleTable {
    patterns: Vec<Vec<Pattern>>,
}

impl RuleTable {
    pub fn new(sys: &TileAssemblySystem) -> Self {
        let patterns = sys
            .tile_ids()
            .map(|z| {
                let mut out = Vec::new();
                let mut current = Vec::new();
                collect(sys, z, 0, 0, &mut current, &mut out);
                out.sort_by(|a: &Pattern, b: &Pattern| {
                    (a.inputs.len(), &a.inputs).cmp(&(b.inputs.len(), &b.inputs))
                });
                out
            })
            .collect();
        Self { patterns }
    }

    /// All patterns for `tile`, shortest first, then by side and tile.
    pub fn patterns(&self, tile: TileId) -> &[Pattern] {
        &self.patterns[tile.index()]
    }

    /// Patterns for `tile` that only use sides in `mask`.
    pub fn patterns_within(
        &self,
        tile: TileId,
        mask: SideMask,
    ) -> impl Iterator<Item = &Pattern> + '_ {
        self.patterns(tile)
            .iter()
            .filter(move |p| p.sides() & !mask == 0)
    }

    /// Patterns for `tile` applicable at `loc` on a `size × size` surface.
    pub fn patterns_at(
        &self,
        tile: TileId,
        loc: Loc,
        size: usize,
    ) -> impl Iterator<Item = &Pattern> + '_ {
        self.patterns_within(tile, side_mask(loc, size))
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.iter().map(Vec::len).sum()
    }
}

fn collect(
    sys: &TileAssemblySystem,
    z: TileId,
    side_from: usize,
    sum: u32,
    current: &mut Vec<(Side, TileId, u32)>,
    out: &mut Vec<Pattern>,
) {
    let tau = sys.temperature();
    if !current.is_empty() && sum >= tau {
        let min = current.iter().map(|c| c.2).min().unwrap_or(0);
        if sum - min < tau {
            out.push(Pattern {
                inputs: current.iter().map(|&(s, t, _)| (s, t)).collect(),
            });
        }
        // any extension keeps a proper subset at or above the threshold
        return;
    }
    for (i, &side) in Side::ALL.iter().enumerate().skip(side_from) {
        for u in sys.tile_ids() {
            let b = sys.bond(z, side, u);
            if b > 0 {
                current.push((side, u, b));
                collect(sys, z, i + 1, sum + b, current, out);
                current.pop();
            }
        }
    }
}
