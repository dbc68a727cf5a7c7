//! The canonical transition system of a tile assembly system on an `n × n`
//! surface, assembly sequences, and terminality.

use alloc::vec::Vec;
use core::fmt;

use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashMap, HashTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::{Configuration, Loc, Placement};
use crate::system::{TileAssemblySystem, TileId};
use crate::tile::Side;

pub type StateId = usize;

/// Default cap on the number of explicitly built states.
pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("state budget of {0} states exceeded")]
    StateBudgetExceeded(usize),
    #[error("seed needs a {needed}x{needed} surface, got {given}x{given}")]
    SurfaceTooSmall { needed: usize, given: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub state_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }
}

/// A transition, labelled with the tile addition that causes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub target: StateId,
    pub placement: Placement,
}

/// Explicit pointed transition system. State 0 is the seed configuration;
/// states are numbered in breadth-first discovery order, expanding each
/// state's frontier row-major and then by tile name.
#[derive(Debug, Clone)]
pub struct TransitionSystem {
    size: usize,
    tile_count: usize,
    states: Vec<Configuration>,
    edges: Vec<Vec<Edge>>,
    parent: Vec<Option<(StateId, Placement)>>,
}

impl TransitionSystem {
    /// Builds a system directly from its parts. The first state is the
    /// initial one; edges must reference existing states.
    pub fn from_parts(
        size: usize,
        tile_count: usize,
        states: Vec<Configuration>,
        edges: Vec<Vec<Edge>>,
    ) -> Self {
        assert_eq!(states.len(), edges.len());
        assert!(!states.is_empty());
        let mut parent = alloc::vec![None; states.len()];
        let mut seen = alloc::vec![false; states.len()];
        seen[0] = true;
        let mut queue = alloc::collections::VecDeque::from([0]);
        while let Some(s) = queue.pop_front() {
            for e in &edges[s] {
                if !seen[e.target] {
                    seen[e.target] = true;
                    parent[e.target] = Some((s, e.placement));
                    queue.push_back(e.target);
                }
            }
        }
        Self {
            size,
            tile_count,
            states,
            edges,
            parent,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of tile types of the underlying system.
    pub fn tile_count(&self) -> usize {
        self.tile_count
    }

    pub fn initial(&self) -> StateId {
        0
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn state(&self, id: StateId) -> &Configuration {
        &self.states[id]
    }

    pub fn states(&self) -> &[Configuration] {
        &self.states
    }

    pub fn successors(&self, id: StateId) -> &[Edge] {
        &self.edges[id]
    }

    pub fn find(&self, c: &Configuration) -> Option<StateId> {
        self.states.iter().position(|s| s == c)
    }

    /// Predecessor lists, indexed by state.
    pub fn predecessors(&self) -> Vec<Vec<StateId>> {
        let mut pred = alloc::vec![Vec::new(); self.states.len()];
        for (s, es) in self.edges.iter().enumerate() {
            for e in es {
                pred[e.target].push(s);
            }
        }
        pred
    }

    /// States with no successor (the terminal assemblies).
    pub fn terminal_states(&self) -> Vec<StateId> {
        (0..self.states.len())
            .filter(|&s| self.edges[s].is_empty())
            .collect()
    }

    /// A shortest assembly sequence from the initial state to `target`, or
    /// `None` if `target` is unreachable.
    pub fn sequence_to(&self, target: StateId) -> Option<AssemblySequence> {
        let mut steps = Vec::new();
        let mut cur = target;
        while cur != 0 {
            let (prev, p) = self.parent.get(cur).copied().flatten()?;
            steps.push(p);
            cur = prev;
        }
        steps.reverse();
        Some(AssemblySequence { steps })
    }

    /// The sequence of tile additions along a path of states starting at the
    /// initial state.
    pub fn sequence_along(&self, path: &[StateId]) -> Option<AssemblySequence> {
        if path.first() != Some(&0) {
            return None;
        }
        let mut steps = Vec::new();
        for w in path.windows(2) {
            let e = self.edges[w[0]].iter().find(|e| e.target == w[1])?;
            steps.push(e.placement);
        }
        Some(AssemblySequence { steps })
    }
}

/// Breadth-first closure of the seed under legal single-tile additions.
pub fn build(sys: &TileAssemblySystem, size: usize) -> Result<TransitionSystem, BuildError> {
    build_with(sys, size, BuildOptions::default())
}

pub fn build_with(
    sys: &TileAssemblySystem,
    size: usize,
    opts: BuildOptions,
) -> Result<TransitionSystem, BuildError> {
    let seed = sys
        .seed_configuration(size)
        .ok_or(BuildError::SurfaceTooSmall {
            needed: sys.seed().extent(),
            given: size,
        })?;
    let hasher = DefaultHashBuilder::default();
    let mut index: HashTable<StateId> = HashTable::new();
    index.insert_unique(hasher.hash_one(&seed), 0, |_| 0);
    let mut states = alloc::vec![seed];
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    let mut parent = alloc::vec![None];
    let mut next = 0;
    while next < states.len() {
        let mut out = Vec::new();
        for p in sys.frontier(&states[next]) {
            let succ = states[next].with(p.loc, p.tile);
            let hash = hasher.hash_one(&succ);
            let target = match index.find(hash, |&id| states[id] == succ) {
                Some(&id) => id,
                None => {
                    if states.len() >= opts.state_budget {
                        return Err(BuildError::StateBudgetExceeded(opts.state_budget));
                    }
                    let id = states.len();
                    index.insert_unique(hash, id, |&id| hasher.hash_one(&states[id]));
                    states.push(succ);
                    parent.push(Some((next, p)));
                    id
                }
            };
            out.push(Edge {
                target,
                placement: p,
            });
        }
        edges.push(out);
        next += 1;
    }
    Ok(TransitionSystem {
        size,
        tile_count: sys.tile_count(),
        states,
        edges,
        parent,
    })
}

/// Tile additions applied in order, starting from the seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AssemblySequence {
    pub steps: Vec<Placement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("seed does not fit the {0}x{0} surface")]
    SeedDoesNotFit(usize),
    #[error("step {step}: tile {} cannot attach at {}", .placement.tile, .placement.loc)]
    IllegalStep { step: usize, placement: Placement },
}

impl AssemblySequence {
    pub fn new(steps: Vec<Placement>) -> Self {
        Self { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the sequence on a `size × size` surface, checking every step
    /// is a legal attachment at the time it is made. Returns the result.
    pub fn replay(
        &self,
        sys: &TileAssemblySystem,
        size: usize,
    ) -> Result<Configuration, ReplayError> {
        let mut c = sys
            .seed_configuration(size)
            .ok_or(ReplayError::SeedDoesNotFit(size))?;
        for (i, p) in self.steps.iter().enumerate() {
            if !sys.can_attach(p.tile, p.loc, &c) {
                return Err(ReplayError::IllegalStep {
                    step: i + 1,
                    placement: *p,
                });
            }
            c.set(p.loc, Some(p.tile));
        }
        Ok(c)
    }
}

impl fmt::Display for AssemblySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {} @ {}", i + 1, p.tile, p.loc)?;
        }
        Ok(())
    }
}

/// Incrementally maintained frontier of a growing configuration.
pub(crate) struct FrontierTracker<'a> {
    sys: &'a TileAssemblySystem,
    config: Configuration,
    entries: Vec<Placement>,
    pos: HashMap<Placement, usize>,
}

impl<'a> FrontierTracker<'a> {
    pub(crate) fn new(sys: &'a TileAssemblySystem, config: Configuration) -> Self {
        let mut t = Self {
            sys,
            config,
            entries: Vec::new(),
            pos: HashMap::new(),
        };
        for p in sys.frontier(&t.config) {
            t.insert(p);
        }
        t
    }

    fn insert(&mut self, p: Placement) {
        if !self.pos.contains_key(&p) {
            self.pos.insert(p, self.entries.len());
            self.entries.push(p);
        }
    }

    fn remove(&mut self, p: Placement) {
        if let Some(i) = self.pos.remove(&p) {
            self.entries.swap_remove(i);
            if let Some(moved) = self.entries.get(i) {
                self.pos.insert(*moved, i);
            }
        }
    }

    fn clear_loc(&mut self, loc: Loc) {
        for t in 0..self.sys.tile_count() as u32 {
            self.remove(Placement::new(TileId(t), loc));
        }
    }

    pub(crate) fn entries(&self) -> &[Placement] {
        &self.entries
    }

    pub(crate) fn into_config(self) -> Configuration {
        self.config
    }

    pub(crate) fn place(&mut self, p: Placement) {
        self.config.set(p.loc, Some(p.tile));
        self.clear_loc(p.loc);
        for side in Side::ALL {
            if let Some(nb) = p.loc.neighbor(side, self.config.size()) {
                if self.config.get(nb).is_none() {
                    self.clear_loc(nb);
                    for t in self.sys.candidates(nb, &self.config) {
                        self.insert(Placement::new(t, nb));
                    }
                }
            }
        }
    }
}

/// Samples a maximal assembly sequence, choosing uniformly among the legal
/// additions at each step. Reproducible from `rng_seed`.
pub fn random_assembly_sequence(
    sys: &TileAssemblySystem,
    size: usize,
    rng_seed: u64,
) -> Result<AssemblySequence, BuildError> {
    let seed = sys
        .seed_configuration(size)
        .ok_or(BuildError::SurfaceTooSmall {
            needed: sys.seed().extent(),
            given: size,
        })?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut tracker = FrontierTracker::new(sys, seed);
    let mut steps = Vec::new();
    while !tracker.entries().is_empty() {
        let p = tracker.entries()[rng.random_range(0..tracker.entries().len())];
        tracker.place(p);
        steps.push(p);
    }
    Ok(AssemblySequence { steps })
}

/// Extends `prefix` until no tile can attach, always taking the first legal
/// addition in row-major, then tile-name, order. The prefix must be legal.
pub fn complete_to_terminal(
    sys: &TileAssemblySystem,
    size: usize,
    prefix: &AssemblySequence,
) -> Result<(AssemblySequence, Configuration), ReplayError> {
    let start = prefix.replay(sys, size)?;
    let mut rank = alloc::vec![0usize; sys.tile_count()];
    for (r, id) in sys.ids_by_name().iter().enumerate() {
        rank[id.index()] = r;
    }
    let mut tracker = FrontierTracker::new(sys, start);
    let mut steps = prefix.steps.clone();
    while let Some(&p) = tracker
        .entries()
        .iter()
        .min_by_key(|p| (p.loc, rank[p.tile.index()]))
    {
        tracker.place(p);
        steps.push(p);
    }
    Ok((AssemblySequence { steps }, tracker.into_config()))
}

/// Where a configuration could keep growing once the surface is enlarged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthSite {
    /// Perimeter tile with the outward glue.
    pub loc: Loc,
    pub side: Side,
    /// A tile type that could bind there.
    pub tile: TileId,
}

/// Scans the north and east perimeter of `c` for a glue that would let a tile
/// bind just outside the surface. Growth cannot leave the first quadrant, and
/// a cell outside the surface touches at most one tile of `c`, so a single
/// outward glue has to reach the temperature on its own.
pub fn beyond_surface_growth(sys: &TileAssemblySystem, c: &Configuration) -> Option<GrowthSite> {
    let n = c.size();
    if n == 0 {
        return None;
    }
    let edge = (0..n)
        .map(|x| (Loc::new(x, n - 1), Side::North))
        .chain((0..n).map(|y| (Loc::new(n - 1, y), Side::East)));
    for (loc, side) in edge {
        let Some(t) = c.get(loc) else { continue };
        for &u in sys.ids_by_name() {
            if sys.bond(u, side.opposite(), t) >= sys.temperature() {
                return Some(GrowthSite { loc, side, tile: u });
            }
        }
    }
    None
}

/// True iff `c` (terminal on its own surface) also stays terminal on every
/// larger surface.
pub fn is_terminal_beyond_surface(sys: &TileAssemblySystem, c: &Configuration) -> bool {
    beyond_surface_growth(sys, c).is_none()
}
