//! Guarded Petri-net translation of a tile assembly system on an `n × n`
//! surface, and an explicit token-game explorer.
//!
//! Places are `empty[i][j]` for every location and `tile[k][i][j]` for every
//! tile type and location; transition `bond[k][i][j]` moves the token of
//! `empty[i][j]` to `tile[k][i][j]`. Its guard is the disjunction of the
//! minimal enabling patterns of tile `k` that fit around `(i, j)`, taken from
//! one rule table shared by all locations.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};
use num_bigint::BigUint;
use thiserror::Error;

use crate::config::{Configuration, Loc};
use crate::rules::{Pattern, RuleTable};
use crate::system::{TileAssemblySystem, TileId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Empty(Loc),
    Tile(TileId, Loc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub tile: TileId,
    pub loc: Loc,
}

/// Token counts, indexed by [`GuardedPetriNet::place_index`].
pub type Marking = Vec<u8>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PetriError {
    #[error("seed needs a {needed}x{needed} surface, got {given}x{given}")]
    SurfaceTooSmall { needed: usize, given: usize },
    #[error("state budget of {0} markings exceeded")]
    StateBudgetExceeded(usize),
}

#[derive(Debug, Clone)]
pub struct GuardedPetriNet {
    size: usize,
    tile_count: usize,
    rules: RuleTable,
    initial: Marking,
}

pub fn translate(sys: &TileAssemblySystem, n: usize) -> Result<GuardedPetriNet, PetriError> {
    let seed = sys
        .seed_configuration(n)
        .ok_or(PetriError::SurfaceTooSmall {
            needed: sys.seed().extent(),
            given: n,
        })?;
    let mut net = GuardedPetriNet {
        size: n,
        tile_count: sys.tile_count(),
        rules: RuleTable::new(sys),
        initial: Vec::new(),
    };
    net.initial = net.marking_of(&seed);
    Ok(net)
}

impl GuardedPetriNet {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tile_count(&self) -> usize {
        self.tile_count
    }

    pub fn place_count(&self) -> usize {
        (self.tile_count + 1) * self.size * self.size
    }

    pub fn transition_count(&self) -> usize {
        self.tile_count * self.size * self.size
    }

    /// `empty[i][j]` first (i-major), then `tile[k][i][j]` by `k`.
    pub fn place_index(&self, place: Place) -> usize {
        let n = self.size;
        match place {
            Place::Empty(l) => l.x * n + l.y,
            Place::Tile(t, l) => (t.index() + 1) * n * n + l.x * n + l.y,
        }
    }

    pub fn place(&self, index: usize) -> Place {
        let n2 = self.size * self.size;
        let cell = index % n2;
        let loc = Loc::new(cell / self.size, cell % self.size);
        match index / n2 {
            0 => Place::Empty(loc),
            k => Place::Tile(TileId(k as u32 - 1), loc),
        }
    }

    pub fn transition_index(&self, t: Transition) -> usize {
        let n = self.size;
        t.tile.index() * n * n + t.loc.x * n + t.loc.y
    }

    pub fn transition(&self, index: usize) -> Transition {
        let n2 = self.size * self.size;
        let cell = index % n2;
        Transition {
            tile: TileId((index / n2) as u32),
            loc: Loc::new(cell / self.size, cell % self.size),
        }
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        (0..self.transition_count()).map(|i| self.transition(i))
    }

    /// Disjuncts of the guard of `t`; each pattern is a conjunction of
    /// "the neighbour place holds a token".
    pub fn guard(&self, t: Transition) -> impl Iterator<Item = &Pattern> + '_ {
        self.rules.patterns_at(t.tile, t.loc, self.size)
    }

    pub fn rules(&self) -> &RuleTable {
        &self.rules
    }

    pub fn initial(&self) -> &Marking {
        &self.initial
    }

    pub fn marking_of(&self, c: &Configuration) -> Marking {
        let mut m = alloc::vec![0u8; self.place_count()];
        for loc in c.locations() {
            let p = match c.get(loc) {
                Some(t) => Place::Tile(t, loc),
                None => Place::Empty(loc),
            };
            m[self.place_index(p)] = 1;
        }
        m
    }

    /// The configuration a marking stands for, when every cell carries
    /// exactly one token.
    pub fn configuration_of(&self, m: &Marking) -> Option<Configuration> {
        let mut c = Configuration::empty(self.size);
        let locs: Vec<Loc> = c.locations().collect();
        for loc in locs {
            let mut found = None;
            let mut tokens = u32::from(m[self.place_index(Place::Empty(loc))]);
            for k in 0..self.tile_count as u32 {
                let v = m[self.place_index(Place::Tile(TileId(k), loc))];
                if v > 0 {
                    found = Some(TileId(k));
                }
                tokens += u32::from(v);
            }
            if tokens != 1 {
                return None;
            }
            c.set(loc, found);
        }
        Some(c)
    }

    pub fn guard_holds(&self, m: &Marking, t: Transition) -> bool {
        self.guard(t).any(|p| {
            p.inputs().iter().all(|&(side, u)| {
                let nb = t.loc.step(side).expect("guards stay on the surface");
                m[self.place_index(Place::Tile(u, nb))] > 0
            })
        })
    }

    pub fn is_enabled(&self, m: &Marking, t: Transition) -> bool {
        m[self.place_index(Place::Empty(t.loc))] > 0 && self.guard_holds(m, t)
    }

    /// Enabled transitions in transition-index order.
    pub fn enabled(&self, m: &Marking) -> Vec<Transition> {
        let n = self.size;
        let open: Vec<Loc> = (0..n * n)
            .filter(|&c| m[c] > 0)
            .map(|c| Loc::new(c / n, c % n))
            .collect();
        let mut out = Vec::new();
        for k in 0..self.tile_count as u32 {
            for &loc in &open {
                let t = Transition { tile: TileId(k), loc };
                if self.guard_holds(m, t) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn fire(&self, m: &Marking, t: Transition) -> Marking {
        let mut next = m.clone();
        next[self.place_index(Place::Empty(t.loc))] -= 1;
        next[self.place_index(Place::Tile(t.tile, t.loc))] += 1;
        next
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    pub reachable: BigUint,
    pub terminal: BigUint,
    pub edges: BigUint,
    /// Per marking (in discovery order), the fired transitions and targets.
    pub graph: Option<Vec<Vec<(Transition, usize)>>>,
}

/// Breadth-first token game from the initial marking.
pub fn explore(
    net: &GuardedPetriNet,
    budget: usize,
    keep_graph: bool,
) -> Result<Exploration, PetriError> {
    let hasher = DefaultHashBuilder::default();
    let mut index: HashTable<usize> = HashTable::new();
    let mut markings = alloc::vec![net.initial.clone()];
    index.insert_unique(hasher.hash_one(&markings[0]), 0, |_| 0);
    let mut queue = VecDeque::from([0usize]);
    let mut graph = Vec::new();
    let mut terminal = 0u64;
    let mut edges = 0u64;
    while let Some(s) = queue.pop_front() {
        let enabled = net.enabled(&markings[s]);
        if enabled.is_empty() {
            terminal += 1;
        }
        let mut out = Vec::new();
        for t in enabled {
            let next = net.fire(&markings[s], t);
            let h = hasher.hash_one(&next);
            let target = match index.find(h, |&i| markings[i] == next) {
                Some(&i) => i,
                None => {
                    if markings.len() >= budget {
                        return Err(PetriError::StateBudgetExceeded(budget));
                    }
                    let i = markings.len();
                    index.insert_unique(h, i, |&j| hasher.hash_one(&markings[j]));
                    markings.push(next);
                    queue.push_back(i);
                    i
                }
            };
            edges += 1;
            out.push((t, target));
        }
        if keep_graph {
            graph.push(out);
        }
    }
    Ok(Exploration {
        reachable: BigUint::from(markings.len()),
        terminal: BigUint::from(terminal),
        edges: BigUint::from(edges),
        graph: keep_graph.then_some(graph),
    })
}
