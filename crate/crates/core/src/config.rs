//! Surface locations and configurations (partial tilings of an `n × n` surface).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::system::TileId;
use crate::tile::Side;

/// A point of the surface. `x` grows east, `y` grows north.
///
/// Locations order row-major: by `y`, then by `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Loc {
    pub x: usize,
    pub y: usize,
}

impl Loc {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    /// The neighbouring location on `side`, if it lies on the `size × size` surface.
    pub fn neighbor(self, side: Side, size: usize) -> Option<Loc> {
        let (x, y) = (self.x, self.y);
        let loc = match side {
            Side::North => Loc::new(x, y.checked_add(1)?),
            Side::East => Loc::new(x.checked_add(1)?, y),
            Side::South => Loc::new(x, y.checked_sub(1)?),
            Side::West => Loc::new(x.checked_sub(1)?, y),
        };
        (loc.x < size && loc.y < size).then_some(loc)
    }

    /// The neighbouring location on `side` on the unbounded first quadrant.
    pub fn step(self, side: Side) -> Option<Loc> {
        self.neighbor(side, usize::MAX)
    }
}

impl Ord for Loc {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Loc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A single tile addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub loc: Loc,
    pub tile: TileId,
}

impl Placement {
    pub const fn new(tile: TileId, loc: Loc) -> Self {
        Self { loc, tile }
    }
}

/// A partial map from the `size × size` surface to tile types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    size: usize,
    cells: Vec<Option<TileId>>,
}

impl Configuration {
    /// The empty configuration.
    pub fn empty(size: usize) -> Self {
        Self {
            size,
            cells: alloc::vec![None; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, loc: Loc) -> bool {
        loc.x < self.size && loc.y < self.size
    }

    fn index(&self, loc: Loc) -> usize {
        loc.y * self.size + loc.x
    }

    /// The tile at `loc`; `None` for empty or off-surface locations.
    pub fn get(&self, loc: Loc) -> Option<TileId> {
        if self.contains(loc) {
            self.cells[self.index(loc)]
        } else {
            None
        }
    }

    pub fn is_empty_at(&self, loc: Loc) -> bool {
        self.contains(loc) && self.cells[self.index(loc)].is_none()
    }

    /// Writes `tile` at `loc` (overwriting). Panics if `loc` is off-surface.
    pub fn set(&mut self, loc: Loc, tile: Option<TileId>) {
        assert!(self.contains(loc), "{loc} outside {0}x{0} surface", self.size);
        let i = self.index(loc);
        self.cells[i] = tile;
    }

    /// A copy of `self` with `tile` placed at `loc`.
    pub fn with(&self, loc: Loc, tile: TileId) -> Self {
        let mut next = self.clone();
        next.set(loc, Some(tile));
        next
    }

    pub fn tile_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// All surface locations in row-major order.
    pub fn locations(&self) -> impl Iterator<Item = Loc> + '_ {
        let n = self.size;
        (0..n).flat_map(move |y| (0..n).map(move |x| Loc::new(x, y)))
    }

    /// Occupied cells in row-major order.
    pub fn tiles(&self) -> impl Iterator<Item = (Loc, TileId)> + '_ {
        self.locations().filter_map(|l| self.get(l).map(|t| (l, t)))
    }

    pub fn has_occupied_neighbor(&self, loc: Loc) -> bool {
        Side::ALL
            .iter()
            .any(|&s| loc.neighbor(s, self.size).is_some_and(|nb| self.get(nb).is_some()))
    }

    /// True iff the occupied cells form one 4-connected component (vacuously
    /// true when there are none).
    pub fn is_connected(&self) -> bool {
        let occupied: Vec<Loc> = self.tiles().map(|(l, _)| l).collect();
        let Some(&start) = occupied.first() else {
            return true;
        };
        let mut seen = alloc::vec![false; self.cells.len()];
        let mut stack = alloc::vec![start];
        seen[self.index(start)] = true;
        let mut reached = 0;
        while let Some(loc) = stack.pop() {
            reached += 1;
            for side in Side::ALL {
                if let Some(nb) = loc.neighbor(side, self.size) {
                    let i = self.index(nb);
                    if self.cells[i].is_some() && !seen[i] {
                        seen[i] = true;
                        stack.push(nb);
                    }
                }
            }
        }
        reached == occupied.len()
    }

    /// Re-embeds the occupied cells on a surface of another size. Cells that
    /// fall outside the new surface are dropped.
    pub fn resized(&self, size: usize) -> Self {
        let mut next = Configuration::empty(size);
        for (loc, t) in self.tiles() {
            if next.contains(loc) {
                next.set(loc, Some(t));
            }
        }
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_order() {
        let mut locs = alloc::vec![Loc::new(1, 0), Loc::new(0, 1), Loc::new(0, 0), Loc::new(1, 1)];
        locs.sort();
        assert_eq!(
            locs,
            [Loc::new(0, 0), Loc::new(1, 0), Loc::new(0, 1), Loc::new(1, 1)]
        );
    }

    #[test]
    fn neighbors_respect_surface() {
        let l = Loc::new(0, 0);
        assert_eq!(l.neighbor(Side::West, 3), None);
        assert_eq!(l.neighbor(Side::South, 3), None);
        assert_eq!(l.neighbor(Side::North, 3), Some(Loc::new(0, 1)));
        assert_eq!(Loc::new(2, 2).neighbor(Side::East, 3), None);
    }

    #[test]
    fn diagonal_tiles_are_disconnected() {
        let mut c = Configuration::empty(2);
        c.set(Loc::new(0, 0), Some(TileId(0)));
        c.set(Loc::new(1, 1), Some(TileId(0)));
        assert!(!c.is_connected());
        c.set(Loc::new(1, 0), Some(TileId(0)));
        assert!(c.is_connected());
    }
}
